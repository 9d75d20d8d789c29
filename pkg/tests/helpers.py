"""Random complexes and chains shared by the property tests."""

import random

from cochainmoves.chains import CellComplex, Chain, CoefficientGroup
from cochainmoves.cochains import Cochain

GROUPS = (CoefficientGroup(), CoefficientGroup(2), CoefficientGroup(3))


def random_complex(rng: random.Random, max_dim: int = 6, max_vertices: int = 9) -> CellComplex:
    nv = rng.randint(1, max_vertices)
    top = rng.randint(0, max_dim)
    simplices = []
    for _ in range(rng.randint(1, 4)):
        size = rng.randint(1, min(top + 1, nv))
        simplices.append(rng.sample(range(nv), size))
    return CellComplex.from_simplices(simplices)


def random_chain(rng, cx: CellComplex, n: int, group=CoefficientGroup(), cls=Chain) -> Chain:
    items = [(c, rng.randint(-5, 5)) for c in cx.basis(n)]
    return cls.from_terms(n, items, group)


def random_cochain(rng, cx, n, group=CoefficientGroup()) -> Cochain:
    return random_chain(rng, cx, n, group, Cochain)


def bundled(name: str):
    from cochainmoves.cli import bundled_path
    from cochainmoves.document import parse_document
    return parse_document(bundled_path(name).read_text(encoding="utf-8"))


EXPECTED_LEFT = "(F^{e*t*r*}_{a*b*p*}⊗id^{t*}_{c*d*})(F^{e*d*t*}_{p*c*q*}⊗id^{p*}_{a*b*})"
EXPECTED_RIGHT = ("∑_{s∈C*_1}(id^{e*}_{a*r*}⊗F^{r*d*t*}_{b*c*s*})(F^{e*d*r*}_{a*s*q*}⊗id^{s*}_{b*c*})"
                  "(id^{e*}_{q*d*}⊗F^{q*c*s*}_{a*b*p*})")
