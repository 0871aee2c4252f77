"""Practical-significance reading of a least difference in means.

A study is practically significant when its least plausible difference
lands strictly beyond the chosen threshold on the matching side. A least
difference of exactly zero means the posterior does not even resolve the
sign, which is reported as its own designation rather than lumped in
with "not practically significant".
"""
from __future__ import annotations

from .model import Designation, EmptyInput, NullRegion

__all__ = ["designate", "is_practically_significant", "consensus"]


def designate(delta_least: float, region: NullRegion) -> Designation:
    """Classify a least difference against a practical null region.

    The region and the least difference must be on the same scale; the
    caller owns that bookkeeping. Landing exactly on a threshold does not
    count as beyond it.
    """
    if delta_least == 0.0:
        return Designation.NO_POSTERIOR_SIGNIFICANCE
    if (
        delta_least > region.pos_threshold
        or delta_least < region.neg_threshold
    ):
        return Designation.PRACTICALLY_SIGNIFICANT
    return Designation.NOT_PRACTICALLY_SIGNIFICANT


def is_practically_significant(delta_least: float, region: NullRegion) -> bool:
    return designate(delta_least, region) is Designation.PRACTICALLY_SIGNIFICANT


def consensus(designations) -> bool:
    """True when every designation is practically significant.

    Needs at least two designations; asking for consensus of fewer is a
    category error and raises EmptyInput.
    """
    items = list(designations)
    if len(items) < 2:
        raise EmptyInput(
            f"consensus needs at least 2 designations, got {len(items)}"
        )
    return all(
        item is Designation.PRACTICALLY_SIGNIFICANT for item in items
    )
