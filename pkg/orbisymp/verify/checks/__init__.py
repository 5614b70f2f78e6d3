from orbisymp.verify.checks import decomposition, dims, flows, fox, pairing

ALL_CHECKS = fox.CHECKS + dims.CHECKS + pairing.CHECKS + decomposition.CHECKS + flows.CHECKS

__all__ = ["ALL_CHECKS"]
