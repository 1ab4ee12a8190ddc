import json
import os

import pytest

import smoothroots

DATA = os.environ.get("SMOOTHROOTS_DATA_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "data"))


def qi():
    return smoothroots.quadratic_descriptor(-1)


def test_factor_splits_x2_plus_1_mod_13():
    r = smoothroots.factor([1, 0, 1], 13, qi())
    assert r["leading"] == 1
    assert sorted(f[0][0] for f in r["factors"]) == [5, 8]
    assert all(pow(13 - f[0][0], 2, 13) == 12 for f in r["factors"])
    assert json.loads(r["json"])["p"] == "13"


def test_factor_irreducible_mod_7():
    r = smoothroots.factor([1, 0, 1], 7, qi())
    assert r["factors"] == [([1, 0, 1], 1)]


def test_factor_through_the_splitter():
    p = 1048613
    r = smoothroots.factor([1, 0, 1], p, qi())
    assert r["path"] == "splitter"
    roots = sorted((p - f[0][0]) % p for f in r["factors"])
    assert all(x * x % p == p - 1 for x in roots)


def test_factor_descriptor_from_file():
    r = smoothroots.factor([-2, 0, 0, 1], 31, os.path.join(DATA, "fields", "x3-2.json"))
    assert sum(len(f[0]) - 1 for f in r["factors"]) == 3


def test_cyclic_exhausted_is_raised():
    with pytest.raises(smoothroots.CyclicExhausted):
        smoothroots.factor([1, 0, 1], 73, qi(), small_prime_cutoff=2, schedule=[1])
    with pytest.raises(ValueError):
        smoothroots.factor([2, 0, 1], 13, qi())


def test_nth_roots_against_scan():
    for p in (7, 31, 101, 1009):
        assert smoothroots.nth_roots(2, 2, p) == [x for x in range(p) if x * x % p == 2]
    x36 = os.path.join(DATA, "fields", "x3-6.json")
    for mode in ("none", "from_factorization", "search"):
        assert smoothroots.nth_roots(6, 3, 7, x36, zeta_mode=mode) == [3, 5, 6]


def test_capelli():
    assert smoothroots.capelli_irreducible(2, 2)
    assert not smoothroots.capelli_irreducible(4, 2)
    with pytest.raises(smoothroots.CapelliViolation):
        smoothroots.nth_roots(4, 2, 7)


def test_least_q_and_smooth_part():
    r = smoothroots.least_q(41, delta="1/20")
    assert (r["q"], r["smooth"]) == (2, 8)
    value, factors = smoothroots.smooth_part(2**64 - 60, 10**4)
    n = 2**64 - 60
    ref = 1
    for q in range(2, 10**4 + 1):
        while n % q == 0:
            n //= q
            ref *= q
    assert value == ref
    assert all(isinstance(q, int) for q, _ in factors)


def test_descriptor_and_census():
    d = json.loads(smoothroots.quadratic_descriptor(-5))
    assert d["class_number"] == "2"
    assert all(passed for _, passed, _ in smoothroots.validate_descriptor(smoothroots.quadratic_descriptor(-5)))
    c = smoothroots.census(-1, 100, 5)
    assert c["psi"] == c["psi_tilde"]
    assert c["inequality_holds"]
