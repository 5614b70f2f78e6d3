from __future__ import annotations

from functools import partial
from typing import Optional

from scipy.linalg import expm

from orbisymp.cocycle.extend import coboundary
from orbisymp.cocycle.spaces import h1_par_complement, z1_par_basis
from orbisymp.rep.algebra import random_lie_element
from orbisymp.symplectic.closedness import closedness_probe
from orbisymp.symplectic.gram import gram_report
from orbisymp.symplectic.pairing import omega_closed_form, omega_cycle
from orbisymp.symplectic.tau import boundary_term_identity_check
from orbisymp.verify.corpus import ALL, CLOSED, corpus_rep
from orbisymp.verify.models import Check, CheckContext

ROUNDING_FLOOR = 1e-9


def check_coboundary_degeneracy(name: str, ctx: CheckContext) -> float:
    rep = corpus_rep(name)
    space = z1_par_basis(rep)
    rng = ctx.rng()
    worst = 0.0
    for _ in range(ctx.count(100)):
        X, Y = random_lie_element(rng), random_lie_element(rng)
        u, v = space.random(rng), space.random(rng)
        worst = max(
            worst,
            abs(omega_closed_form(rep, coboundary(rep, X), v)),
            abs(omega_closed_form(rep, u, coboundary(rep, Y))),
        )
    return worst


def check_oracles(name: str, ctx: CheckContext) -> float:
    rep = corpus_rep(name)
    space = z1_par_basis(rep)
    rng = ctx.rng()
    worst = 0.0
    for _ in range(ctx.count(100)):
        u, v = space.random(rng), space.random(rng)
        worst = max(worst, abs(omega_closed_form(rep, u, v) - omega_cycle(rep, u, v)))
    return worst


def check_antisymmetry(name: str, ctx: CheckContext) -> float:
    rep = corpus_rep(name)
    space = z1_par_basis(rep)
    rng = ctx.rng()
    worst = 0.0
    for _ in range(ctx.count(100)):
        u, v = space.random(rng), space.random(rng)
        worst = max(worst, abs(omega_closed_form(rep, u, v) + omega_closed_form(rep, v, u)))
    return worst


def check_bilinearity(name: str, ctx: CheckContext) -> float:
    rep = corpus_rep(name)
    space = z1_par_basis(rep)
    rng = ctx.rng()
    worst = 0.0
    for _ in range(ctx.count(100)):
        u, w, v = space.random(rng), space.random(rng), space.random(rng)
        a, b = (float(k) / 4.0 for k in rng.integers(-8, 9, size=2))
        combined = omega_closed_form(rep, u.scale(a) + w.scale(b), v)
        split = a * omega_closed_form(rep, u, v) + b * omega_closed_form(rep, w, v)
        worst = max(worst, abs(combined - split))
    return worst


def check_conjugation(name: str, ctx: CheckContext) -> float:
    rep = corpus_rep(name)
    space = z1_par_basis(rep)
    rng = ctx.rng()
    worst = 0.0
    for _ in range(ctx.count(50)):
        g = expm(random_lie_element(rng, 0.5))
        u, v = space.random(rng), space.random(rng)
        moved = omega_closed_form(rep.conjugate(g), u.conjugate(g), v.conjugate(g))
        worst = max(worst, abs(moved - omega_closed_form(rep, u, v)))
    return worst


def check_gram_conditioning(name: str, ctx: CheckContext) -> float:
    """max/min singular value of the Gram matrix; 0 for a rigid representation."""

    rep = corpus_rep(name)
    report = gram_report(rep, h1_par_complement(rep))
    if report.dimension == 0:
        return 0.0
    if report.min_singular == 0.0:
        return float("inf")
    return report.max_singular / report.min_singular


def check_gram_antisymmetry(name: str, ctx: CheckContext) -> float:
    rep = corpus_rep(name)
    return gram_report(rep, h1_par_complement(rep)).antisymmetry


def check_tau_identity(name: str, ctx: CheckContext) -> Optional[float]:
    rep = corpus_rep(name)
    if not rep.signature.boundary:
        return None
    space = z1_par_basis(rep)
    rng = ctx.rng()
    return max(
        boundary_term_identity_check(rep, space.random(rng), space.random(rng)) for _ in range(ctx.count(20))
    )


def _probe_directions(name: str):
    rep = corpus_rep(name)
    return rep, h1_par_complement(rep).basis[:3]


def check_closedness(name: str, ctx: CheckContext) -> float:
    rep, directions = _probe_directions(name)
    return closedness_probe(rep, directions, 1e-3)


def check_closedness_refinement(name: str, ctx: CheckContext) -> float:
    """Ratio of the probe at h = 1e-3 to the probe at h = 1e-2; 0 once the coarse probe is at rounding level."""

    rep, directions = _probe_directions(name)
    coarse = closedness_probe(rep, directions, 1e-2)
    if coarse < ROUNDING_FLOOR:
        return 0.0
    return closedness_probe(rep, directions, 1e-3) / coarse


CHECKS = []
for _name in ALL:
    CHECKS += [
        Check(f"pairing.coboundary.{_name}", "pairing", 1e-9, partial(check_coboundary_degeneracy, _name)),
        Check(f"pairing.oracles.{_name}", "pairing", 1e-10, partial(check_oracles, _name)),
        Check(f"pairing.antisymmetry.{_name}", "pairing", 1e-9, partial(check_antisymmetry, _name)),
        Check(f"pairing.bilinearity.{_name}", "pairing", 1e-9, partial(check_bilinearity, _name)),
        Check(f"pairing.conjugation.{_name}", "pairing", 1e-9, partial(check_conjugation, _name)),
        Check(f"pairing.gram_conditioning.{_name}", "pairing", 1e6, partial(check_gram_conditioning, _name)),
        Check(f"pairing.gram_antisymmetry.{_name}", "pairing", 1e-9, partial(check_gram_antisymmetry, _name)),
    ]
CHECKS.append(Check("pairing.tau_identity.pants", "pairing", 1e-10, partial(check_tau_identity, "pants")))
for _name in CLOSED:
    CHECKS += [
        Check(f"pairing.closedness.{_name}", "pairing", 1e-3, partial(check_closedness, _name)),
        Check(f"pairing.closedness_refinement.{_name}", "pairing", 0.5, partial(check_closedness_refinement, _name)),
    ]
