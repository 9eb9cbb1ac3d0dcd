import itertools
import math
from fractions import Fraction

import pytest

from feyncat import hopf
from feyncat.finsets import FiberedMap, compose_maps, enumerate_hom
from feyncat.hopf import (
    HopfQuotient,
    NotDecompositionFinite,
    basis_keys,
    check_bialgebra,
    check_coassociativity,
    check_counit,
    class_key,
    coproduct_key,
    counit,
    decomposition_finite_witness,
    drop_one_term,
    dual_pairing_check,
    fiber_sizes,
    os_morphism,
    product,
)
from feyncat.linear import FreeModuleElement


def brute_literal_coproduct(phi):
    """Every pair of OS maps through any middle object composing to ``phi``."""
    out = []
    for k in range(phi.source + 1):
        for first in enumerate_hom("OS", phi.source, k):
            for second in enumerate_hom("OS", k, phi.target):
                if compose_maps(first, second) == phi:
                    out.append(((second, first), 1))
    return FreeModuleElement(out)


# OS: literal morphisms


@pytest.mark.parametrize("sizes", [(1,), (2,), (2, 1), (3,), (2, 2), (1, 3), (4,)])
def test_os_coproduct_matches_brute_force(sizes):
    phi = os_morphism(sizes)
    assert coproduct_key("OS", phi) == brute_literal_coproduct(phi)


@pytest.mark.parametrize("sizes", [(1,), (2,), (3,), (2, 1), (2, 3), (4,), (1, 1, 1)])
def test_os_coproduct_term_count_is_product_of_compositions(sizes):
    # each fiber splits into consecutive nonempty blocks independently
    phi = os_morphism(sizes)
    assert len(coproduct_key("OS", phi)) == math.prod(2 ** (k - 1) for k in sizes)


def test_os_fold_coproduct_frozen():
    phi = os_morphism([2])
    d = coproduct_key("OS", phi)
    ident1, ident2 = FiberedMap.identity(1), FiberedMap.identity(2)
    assert d == FreeModuleElement({(phi, ident2): 1, (ident1, phi): 1})


@pytest.mark.parametrize("cat", ["OS", "FS", "FS<"])
def test_coassociativity(cat):
    assert check_coassociativity(cat, 4).passed


@pytest.mark.parametrize("cat", ["OS", "FS", "FS<"])
def test_counit(cat):
    assert check_counit(cat, 4).passed


@pytest.mark.parametrize("cat", ["OS", "FS", "FS<"])
def test_bialgebra(cat):
    assert check_bialgebra(cat, 4).passed


def test_dual_pairing():
    assert dual_pairing_check(3).passed


@pytest.mark.parametrize("cat", ["OS", "FS"])
def test_dropped_term_breaks_bialgebra(cat):
    report = check_bialgebra(cat, 3, drop_one_term(cat))
    assert not report.passed and report.witness is not None


def test_counit_picks_identities():
    x = FreeModuleElement({FiberedMap.identity(2): 3, os_morphism([2]): 5})
    assert counit("OS", x) == 3


def test_product_is_disjoint_union():
    a = FreeModuleElement.basis(os_morphism([2]))
    b = FreeModuleElement.basis(os_morphism([1]))
    assert product("OS", a, b) == FreeModuleElement.basis(os_morphism([2, 1]))
    assert product("FS", FreeModuleElement.basis((2,)), FreeModuleElement.basis((1,))) == FreeModuleElement.basis((1, 2))


# FS classes


def brute_class_coproduct(key):
    """Count factorization classes by orbit enumeration under the middle symmetric group."""
    phi = hopf.representative("FS", key)
    terms = {}
    for k in range(phi.target, phi.source + 1):
        pairs = [
            (a, b)
            for a in enumerate_hom("FS", phi.source, k)
            for b in enumerate_hom("FS", k, phi.target)
            if compose_maps(a, b) == phi
        ]
        orbits = set()
        for a, b in pairs:
            orbit = frozenset(
                (tuple(s[x] for x in a.f), tuple(b.f[s.index(y)] for y in range(k)))
                for s in map(list, itertools.permutations(range(k)))
            )
            orbits.add((orbit, class_key(b), class_key(a)))
        for _, kb, ka in orbits:
            terms[kb, ka] = terms.get((kb, ka), 0) + 1
    return FreeModuleElement(terms)


@pytest.mark.parametrize("key", [(1,), (2,), (1, 2), (3,), (2, 2), (1, 3), (4,), (1, 1, 2)])
def test_fs_class_coproduct_matches_orbit_count(key):
    assert coproduct_key("FS", key) == brute_class_coproduct(key)


def test_basis_keys_are_partitions():
    assert [len([k for k in basis_keys("FS", n) if sum(k) == n]) for n in range(6)] == [1, 1, 2, 3, 5, 7]


# decomposition finiteness


def test_delta_plus_is_rejected_with_witness():
    phi = enumerate_hom("Δ₊", 1, 1)[0]
    witness = decomposition_finite_witness("Δ₊", phi)
    assert witness is not None
    a, b = witness
    assert compose_maps(b, a) == phi and b.target > max(phi.source, phi.target)
    with pytest.raises(NotDecompositionFinite) as exc:
        coproduct_key("Δ₊", phi)
    assert exc.value.witness == witness


def test_os_is_decomposition_finite():
    for phi in basis_keys("OS", 3):
        assert decomposition_finite_witness("OS", phi) is None


# Hopf quotient


def takeuchi_antipode(H, q):
    """``S = Σ_k (-1)^k m^(k-1) (id - ηε)^(⊗k) Δ^(k-1)`` on the quotient."""
    if q == ():
        return FreeModuleElement.basis(())
    total = FreeModuleElement()
    # chains of k non-unit tensor factors whose product expands q
    frontier = FreeModuleElement.basis((q,))
    k = 1
    while not frontier.is_zero():
        for chain, c in frontier.items():
            prod = FreeModuleElement.basis(())
            for part in chain:
                prod = H.product(prod, FreeModuleElement.basis(part))
            total = total + ((-1) ** k * c) * prod
        nxt = []
        for chain, c in frontier.items():
            for (a, b), d in H.coproduct(chain[-1]).items():
                if a != () and b != ():
                    nxt.append((chain[:-1] + (a, b), c * d))
        frontier = FreeModuleElement(nxt)
        k += 1
    return total


@pytest.mark.parametrize("cat", ["OS", "FS"])
def test_antipode_identity(cat):
    H = HopfQuotient(cat)
    assert H.check_antipode(3).passed


@pytest.mark.parametrize("cat", ["OS", "FS"])
def test_antipode_matches_takeuchi(cat):
    H = HopfQuotient(cat)
    for q in H.keys(3):
        assert H.antipode(q) == takeuchi_antipode(H, q)


def test_os_antipode_low_degree_frozen():
    H = HopfQuotient("OS")
    assert H.antipode((2,)) == FreeModuleElement({(2,): -1})
    assert H.antipode((3,)) == FreeModuleElement({(2, 2): 2, (3,): -1})


def test_quotient_is_connected_and_coideal():
    for cat in ("OS", "FS"):
        H = HopfQuotient(cat)
        H.check_connected(4)
        assert H.check_coideal(4).passed


def test_quotient_keys_by_degree():
    assert [len([q for q in HopfQuotient("OS").keys(d) if HopfQuotient.degree(q) == d]) for d in range(5)] == [1, 1, 2, 4, 8]
    assert [len([q for q in HopfQuotient("FS").keys(d) if HopfQuotient.degree(q) == d]) for d in range(5)] == [1, 1, 2, 3, 5]


def test_quotient_rejects_other_bases():
    with pytest.raises(ValueError):
        HopfQuotient("FS<")


def test_fiber_sizes_and_class_key():
    phi = FiberedMap(4, 2, (1, 0, 1, 1))
    assert fiber_sizes(phi) == (1, 3)
    assert class_key(phi) == (1, 3)
    with pytest.raises(ValueError):
        os_morphism([2, 0])
