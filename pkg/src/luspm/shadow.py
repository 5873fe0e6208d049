"""Observation hooks for verifying pruning decisions in tests.

A shadow receives every pruning event with enough context to force-evaluate
what was skipped. Production runs pass no shadow; the hooks exist so the
safety of each strategy can be checked on small instances.
"""

from __future__ import annotations

from .seqdb import Pattern


class MiningShadow:
    """No-op base; override what you want to observe."""

    def sluspb_skip(self, pattern: Pattern) -> None:
        """Lower-bound test skipped the true-utility evaluation of pattern."""

    def sbips_prune(self, sequence: Pattern, removed_index: int, position: int) -> None:
        """Position ``position`` of ``sequence`` (frozen prefix before
        ``removed_index``) was marked invalid, pre-deletion indexing."""

    def ebisps_cut(self, accumulated: Pattern, residual: Pattern) -> None:
        """The extension subtree over ``accumulated`` plus any subset of
        ``residual`` was cut."""
