import pytest

from sk1ec.corpus import bundled
from sk1ec.curves import WeierstrassModel, minimal_model


@pytest.fixture(scope="session")
def ref():
    """The seven curves from the bundled fixture, keyed by label, as minimal models."""
    return {r.label: minimal_model(r.model)[0] for r in bundled("reference_curves")}


@pytest.fixture(scope="session")
def corpus():
    """Reference curves plus the smoke corpus, as (label, minimal model) pairs."""
    recs = bundled("reference_curves") + bundled("smoke_corpus")
    return [(r.label, minimal_model(r.model)[0]) for r in recs]


def model(*a):
    return WeierstrassModel.from_ainvs(a)
