"""Machine-checkable result records.

A :class:`Certificate` couples a named claim with a digest of its inputs,
a verdict, and enough evidence to re-check the claim without rerunning the
library.  Serialization is canonical (sorted keys, compact separators) so
digests and byte-level comparisons are stable; the shape is pinned by
``schema/certificate.schema.json``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

VERSION = "1"
VERDICTS = ("pass", "fail", "inapplicable")


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def digest_of(payload) -> str:
    return hashlib.sha256(canonical_json(payload).encode()).hexdigest()


@dataclass(frozen=True)
class Certificate:
    claim: str
    inputs_digest: str
    verdict: str
    evidence: dict
    version: str = VERSION

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"verdict {self.verdict!r} not in {VERDICTS}")

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "inputs_digest": self.inputs_digest,
            "verdict": self.verdict,
            "evidence": self.evidence,
            "version": self.version,
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())


def certificate(claim: str, inputs, verdict: str, evidence: dict) -> Certificate:
    """Build a certificate, hashing ``inputs`` canonically."""
    return Certificate(claim, digest_of(inputs), verdict, evidence)


def complex_payload(C) -> dict:
    """Canonical serialization of a complex for input digests."""
    from .core import bits

    return {"n": C.n, "facets": sorted(list(bits(f)) for f in C.facets)}
