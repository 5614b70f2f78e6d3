from __future__ import annotations

import os
from pathlib import Path
from typing import Optional

from dotenv import find_dotenv, load_dotenv

ENV_FILE_VAR = "ORBISYMP_ENV"


def _locate() -> Optional[Path]:
    override = os.getenv(ENV_FILE_VAR)
    if override:
        path = Path(override).expanduser()
        return path if path.is_file() else None
    found = find_dotenv(usecwd=True)
    return Path(found) if found else None


def load_env_file() -> Optional[Path]:
    """
    Load ``$ORBISYMP_ENV``, or else the nearest ``.env`` above the working directory.

    Exported variables win over file values. Returns the file that was loaded, if any.
    """

    path = _locate()
    if path is None:
        return None
    load_dotenv(path, override=False)
    return path
