"""
One verifier per catalog kind, and the harness that runs them over a catalog directory
"""
from belyi.errors import SchemaError
from belyi.verifiers.base import Verifier
from belyi.verifiers.cover import CompositeVerifier, CoverVerifier
from belyi.verifiers.curve import CurveVerifier
from belyi.verifiers.explicit import ExplicitVerifier
from belyi.verifiers.genus0 import Genus0Verifier
from belyi.verifiers.hpg import HpgVerifier
from belyi.verifiers.isogeny import IsogenyVerifier
from belyi.verifiers.transformation import TransformationVerifier

VERIFIERS = {
    cls.kind: cls
    for cls in (
        Genus0Verifier,
        CurveVerifier,
        CoverVerifier,
        ExplicitVerifier,
        IsogenyVerifier,
        CompositeVerifier,
        TransformationVerifier,
        HpgVerifier,
    )
}


def verifier_for(kind: str) -> Verifier:
    if kind not in VERIFIERS:
        raise SchemaError(f"no verifier for kind {kind!r}")
    return VERIFIERS[kind]()
