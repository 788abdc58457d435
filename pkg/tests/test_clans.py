import math

import pytest

from korbits.clans import Clan, canonicalize, clan_to_signed_involution, enumerate_clans, pair_validity
from korbits.errors import ContractViolation, UsageError
from korbits.pairs import parse_pair_spec


def test_canonicalize_renumbers_by_first_occurrence():
    assert canonicalize([5, 7, 5, 7]).symbols == (1, 2, 1, 2)
    assert canonicalize(["+", "-"]).symbols == ("+", "-")
    assert canonicalize([2, 1, 1, 2]).symbols == (1, 2, 2, 1)


def test_canonicalize_idempotent():
    for clan in enumerate_clans(2, 2):
        assert canonicalize(clan.symbols) == clan


def test_rejects_unpaired_numbers():
    with pytest.raises(ContractViolation):
        canonicalize([1, "+", "-"])
    with pytest.raises(ContractViolation):
        canonicalize([1, 1, 1, "+"])


def _clan_count(p, q):
    # independent count: choose pair positions, match them, place signs
    n = p + q
    total = 0
    for k in range(min(p, q) + 1):
        pairings = math.factorial(2 * k) // (2 ** k * math.factorial(k))
        total += (
            math.comb(n, 2 * k)
            * pairings
            * math.comb(n - 2 * k, p - k)
        )
    return total


def test_enumerate_counts_match_formula():
    for p in range(0, 5):
        for q in range(0, 5):
            if 0 < p + q <= 7:
                assert len(enumerate_clans(p, q)) == _clan_count(p, q)


def test_enumerate_known_sizes():
    assert len(enumerate_clans(2, 2)) == 21
    assert len(enumerate_clans(1, 0)) == 1
    # (2,1) has six clans (three sign strings, three pair placements);
    # ten is the (3,1) count
    assert len(enumerate_clans(2, 1)) == 6
    assert len(enumerate_clans(3, 1)) == 10


def test_gamma_counts():
    clan = Clan.parse("(1,+,1,-)")
    assert [clan.gamma_plus(i) for i in range(1, 5)] == [0, 1, 2, 2]
    assert [clan.gamma_minus(i) for i in range(1, 5)] == [0, 0, 1, 2]
    pairs = {
        (i, j): clan.gamma_pair(i, j)
        for i in range(1, 5)
        for j in range(i + 1, 5)
    }
    assert pairs[(1, 2)] == 1
    assert sum(pairs.values()) == 1


def test_gamma_pair_no_numbers():
    clan = Clan.parse("(+,-,+,-)")
    assert all(
        clan.gamma_pair(i, j) == 0 for i in range(1, 5) for j in range(i + 1, 5)
    )


def test_symmetry_predicates():
    both = Clan.parse("(1,2,1,2)")
    assert both.is_symmetric() and both.is_skew_symmetric()
    skew = Clan.parse("(+,+,-,-)")
    assert not skew.is_symmetric() and skew.is_skew_symmetric()
    assert Clan.parse("(+,-,+)").is_symmetric()


def test_symmetry_consistency_under_reversal():
    for clan in enumerate_clans(2, 3):
        if clan.is_symmetric():
            assert clan.reverse() == clan


def test_pair_validity():
    spsp = parse_pair_spec("C:spsp:1,1")
    assert pair_validity(Clan.parse("(1,1,2,2)"), spsp)
    assert not pair_validity(Clan.parse("(1,2,2,1)"), spsp)
    dgl = parse_pair_spec("D:gl:3")
    assert pair_validity(Clan.parse("(1,1,-,+,2,2)"), dgl)
    with pytest.raises(ContractViolation):
        pair_validity(Clan.parse("(+,-)"), spsp)


def test_clan_to_signed_involution():
    assert clan_to_signed_involution(Clan.parse("(1,-,+,-,1)")).cycle_string() == "(1,5)"
    assert (
        clan_to_signed_involution(Clan.parse("(1,2,-,1,2)")).cycle_string()
        == "(1,4)(2,5)"
    )
    assert clan_to_signed_involution(Clan.parse("(+,-,+)")).is_identity()


def test_parse_rejects_garbage():
    with pytest.raises(UsageError):
        Clan.parse("(+,?,-)")
    with pytest.raises(UsageError):
        Clan.parse("")
