import itertools
import random
from fractions import Fraction

import networkx as nx
import pytest

from src.data_loader import load_character
from src.errors import InputError
from src.sigma import (
    MEINERT_S,
    Character,
    Status,
    build_meinert_graph,
    commutation_graph,
    density_certificate,
    density_range,
    emptiness_verdict,
    euler_characteristic,
    find_vanishing_generator,
    is_chordal,
    is_generic,
    lex_bfs,
    meinert_graph_properties,
    meinert_instance,
    meinert_quotient_check,
    orlandi_korner_sigma1,
    powers_of_three_character,
    random_character,
    raag_sigma1,
    raag_sigma2,
    sigma2_sufficient,
    sigma_table,
    support_threshold_table,
)
from src.words import FormalWord, commutator_word


# -------------------------------------------------
# Characters
# -------------------------------------------------

def test_character_fills_missing_pairs():
    chi = Character(3, "aut", {(1, 2): 1})
    assert chi[(2, 1)] == 0
    assert chi.support() == {(1, 2)}
    assert len(chi.pairs()) == 6


@pytest.mark.parametrize("values", [
    {(1, 2): 0.5},       # float
    {},                  # zero character
    {(1, 1): 1},         # diagonal pair
    {(1, 4): 1},         # label out of range
])
def test_bad_characters_are_rejected(values):
    with pytest.raises(InputError):
        Character(3, "aut", values)


def test_out_character_needs_zero_column_sums():
    with pytest.raises(InputError):
        Character(3, "out", {(1, 2): 1})
    chi = Character(3, "out", {(1, 2): 1, (3, 2): -1})
    assert chi.family == "out"


def test_scaling_keeps_sign_class():
    chi = powers_of_three_character(3)
    assert chi.scaled(Fraction(1, 2))[(3, 1)] == Fraction(3, 2)
    assert chi.negated()[(2, 1)] == -1
    with pytest.raises(InputError):
        chi.scaled(0)


def test_random_character_respects_support():
    chi = random_character(4, "aut", seed=3, support=[(1, 2), (3, 4)])
    assert chi.support() <= {(1, 2), (3, 4)}
    chi = random_character(3, "out", seed=3, support=[(1, 2), (3, 2)])
    assert chi.support() <= {(1, 2), (3, 2)}
    assert chi[(1, 2)] == -chi[(3, 2)]


@pytest.mark.parametrize("n, family, support, bound", [
    (3, "out", [(1, 2)], 5),           # column 2 balances on (3,2)
    (3, "out", [(3, 2)], 5),           # balancing row alone is always zero
    (4, "out", [(1, 4), (2, 4)], 5),   # column 4 balances on (3,4)
    (3, "aut", [], 5),
    (3, "aut", [(1, 1)], 5),
    (3, "aut", None, 0),
])
def test_random_character_rejects_unreachable_supports(n, family, support, bound):
    with pytest.raises(InputError):
        random_character(n, family, seed=1, support=support, bound=bound)


# -------------------------------------------------
# Genericity, density and emptiness
# -------------------------------------------------

def test_powers_of_three_are_generic():
    assert is_generic(powers_of_three_character(4, "aut"))
    assert is_generic(powers_of_three_character(4, "out"))


def test_vanishing_generator_is_found():
    chi = Character(3, "aut", {(1, 2): 1})
    assert find_vanishing_generator(chi) == ((2,), 1)
    assert not is_generic(chi)


def test_density_range():
    assert density_range(4, "aut") == 2
    assert density_range(4, "out") == 1


EULER_AUT = {2: -1, 3: 4, 4: -27, 5: 256, 6: -3125, 7: 46656, 8: -823543, 9: 16777216,
              10: -387420489, 11: 10000000000, 12: -285311670611}
EULER_OUT = {3: -2, 4: 9, 5: -64, 6: 625, 7: -7776, 8: 117649, 9: -2097152,
              10: 43046721, 11: -1000000000, 12: 25937424601}


@pytest.mark.parametrize("n, expected", sorted(EULER_AUT.items()))
def test_euler_characteristic_aut(n, expected):
    assert euler_characteristic(n, "aut") == expected


@pytest.mark.parametrize("n, expected", sorted(EULER_OUT.items()))
def test_euler_characteristic_out(n, expected):
    assert euler_characteristic(n, "out") == expected


def test_euler_characteristic_below_range():
    with pytest.raises(InputError):
        euler_characteristic(1, "aut")
    with pytest.raises(InputError):
        euler_characteristic(2, "out")


def test_emptiness_verdict():
    assert emptiness_verdict(4, 3, "aut").status == Status.EMPTY
    assert emptiness_verdict(4, 2, "aut").status == Status.DENSE
    assert emptiness_verdict(4, 2, "out").status == Status.EMPTY
    with pytest.raises(InputError):
        emptiness_verdict(4, -1, "aut")


def test_sigma_table():
    table = sigma_table(4, "aut")
    assert list(table["m"]) == [0, 1, 2, 3, 4]
    assert list(table["status"]) == ["DENSE", "DENSE", "DENSE", "EMPTY", "EMPTY"]


@pytest.mark.parametrize("family, low", [("aut", 2), ("out", 3)])
def test_sigma_table_splits_at_the_dense_range(family, low):
    for n in range(low, 9):
        top = density_range(n, family)
        statuses = list(sigma_table(n, family, up_to=n + 2)["status"])
        assert statuses == ["DENSE"] * (top + 1) + ["EMPTY"] * (n + 2 - top)


def test_generic_random_characters_are_dense_and_in():
    seen = 0
    for n in (3, 4, 5):
        for family in ("aut", "out"):
            for seed in range(60):
                chi = random_character(n, family, seed=seed, bound=1000)
                if not is_generic(chi):
                    continue
                seen += 1
                top = density_range(n, family)
                assert all(emptiness_verdict(n, m, family).status == Status.DENSE for m in range(top + 1))
                if family == "aut":
                    assert orlandi_korner_sigma1(chi).status == Status.IN
    assert seen > 250


def test_density_certificate_on_random_generic_characters():
    passed = 0
    for seed in range(20):
        chi = random_character(3, "aut", seed=seed, bound=50)
        if is_generic(chi):
            assert density_certificate(chi, 1).passed
            passed += 1
        if passed == 3:
            break
    assert passed == 3


@pytest.mark.slow
def test_density_certificate_on_random_generic_wa4():
    chi = next(c for c in (random_character(4, "aut", seed=s, bound=1000) for s in range(50)) if is_generic(c))
    assert density_certificate(chi, 2).passed


def test_verdicts_ignore_scaling_and_sign():
    rng = random.Random(11)
    characters = [Character(n, "aut", values) for n, values, _, _ in OK_FIXTURES]
    characters += [random_character(n, "aut", seed=s, bound=3) for n in (3, 4) for s in range(40)]
    for chi in characters:
        status = orlandi_korner_sigma1(chi).status
        generic = is_generic(chi)
        q = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        for image in (chi.scaled(q), chi.negated(), chi.negated().scaled(q)):
            assert orlandi_korner_sigma1(image).status == status
            assert is_generic(image) == generic
    chi = powers_of_three_character(3, "aut")
    for image in (chi.scaled(Fraction(7, 2)), chi.negated()):
        assert density_certificate(image, 1).passed


def test_density_certificate_small_aut():
    cert = density_certificate(powers_of_three_character(3, "aut"), 1)
    assert cert.passed
    items = {name: (tag, ok) for name, tag, ok, _ in cert.items}
    assert items["nonvanishing"] == ("computed", True)
    assert items["homology"] == ("computed", True)
    assert items["atom-ordering"] == ("computed", True)
    assert items["intersection-closed"] == ("computed", True)
    assert cert.records()[-1]["detail"] == "[chi] in Sigma^1(PSAut_3)"


def test_density_certificate_rejects_bad_requests():
    with pytest.raises(InputError):
        density_certificate(powers_of_three_character(3, "aut"), 2)
    with pytest.raises(InputError):
        density_certificate(Character(3, "aut", {(1, 2): 1}), 1)


@pytest.mark.slow
def test_density_certificate_wa4():
    chi = load_character("generic_aut_4.json")
    assert density_certificate(chi, 2).passed


# -------------------------------------------------
# Sigma^1 of PSAut_n
# -------------------------------------------------

OK_FIXTURES = [
    # n, values, status, witness
    (2, {(1, 2): 1}, Status.OUT, (1, 2)),
    (2, {(1, 2): 1, (2, 1): -4}, Status.OUT, (1, 2)),
    (3, {(1, 2): 1}, Status.OUT, (1, 2)),
    (3, {(1, 3): 2, (3, 1): 5}, Status.OUT, (1, 3)),
    (3, {(1, 3): 1, (2, 3): -1, (1, 2): 1, (3, 2): -1, (2, 1): 1, (3, 1): -1}, Status.OUT, (1, 2, 3)),
    (3, {(1, 2): 1, (3, 2): -1}, Status.OUT, (1, 2, 3)),
    (3, {(1, 2): 1, (3, 2): -2}, Status.IN, None),
    (3, {p: 1 for p in itertools.permutations((1, 2, 3), 2)}, Status.IN, None),
    (4, {(2, 4): 3, (4, 2): -3}, Status.OUT, (2, 4)),
    (4, {(1, 2): 1, (3, 2): -1}, Status.OUT, (1, 2, 3)),
    (4, {(1, 2): 1, (3, 2): -1, (4, 1): 1}, Status.IN, None),
    (4, {(2, 4): 3, (4, 2): -3, (1, 2): 1}, Status.IN, None),
    (5, {(3, 5): 1, (5, 3): 1}, Status.OUT, (3, 5)),
    (5, {(2, 4): 1, (5, 4): -1, (4, 5): 2, (2, 5): -2}, Status.OUT, (2, 4, 5)),
    (5, {(2, 4): 1, (5, 4): -1, (4, 5): 2, (2, 5): -3}, Status.IN, None),
]


@pytest.mark.parametrize("n, values, status, witness", OK_FIXTURES)
def test_sigma1_fixture_table(n, values, status, witness):
    verdict = orlandi_korner_sigma1(Character(n, "aut", values))
    assert verdict.status == status
    assert verdict.witness == witness


def test_rank_two_sigma1_is_empty():
    for seed in range(30):
        assert orlandi_korner_sigma1(random_character(2, "aut", seed=seed)).status == Status.OUT


def test_pair_support_is_out():
    verdict = orlandi_korner_sigma1(load_character("ok_condition_one_4.json"))
    assert verdict.status == Status.OUT
    assert verdict.witness == (1, 2)


def test_triple_with_zero_columns_is_out():
    verdict = orlandi_korner_sigma1(load_character("ok_condition_two_3.json"))
    assert verdict.status == Status.OUT
    assert verdict.witness == (1, 2, 3)


def test_generic_character_is_in():
    assert orlandi_korner_sigma1(powers_of_three_character(3)).status == Status.IN
    assert orlandi_korner_sigma1(powers_of_three_character(4)).status == Status.IN
    with pytest.raises(InputError):
        orlandi_korner_sigma1(load_character("generic_out_4.json"))


def test_support_threshold_table():
    df = support_threshold_table(4, samples=30, seed=1)
    assert list(df.columns) == ["support", "sigma1", "count"]
    assert df["count"].sum() == 30
    assert set(df["sigma1"]) <= {"IN", "OUT"}


# -------------------------------------------------
# Right-angled Artin groups
# -------------------------------------------------

def test_lex_bfs_visits_every_vertex():
    G = nx.path_graph(5)
    assert sorted(lex_bfs(G)) == list(range(5))


def test_chordality():
    assert is_chordal(nx.path_graph(4))
    assert is_chordal(nx.complete_graph(4))
    square = is_chordal(nx.cycle_graph(4))
    assert not square
    assert len(square.cycle) == 4


def test_raag_sigma1_on_path():
    G = nx.path_graph(3)
    assert raag_sigma1(G, {0: 1, 1: 1, 2: 0}).status == Status.IN
    # dead middle vertex splits the living set
    assert raag_sigma1(G, {0: 1, 1: 0, 2: 1}).status == Status.OUT
    assert raag_sigma1(nx.Graph([(0, 1)]), {0: 1}).status == Status.IN


def test_raag_sigma1_disconnected_living_set():
    G = nx.Graph([(0, 1), (2, 3)])
    assert raag_sigma1(G, {0: 1, 2: 1}).status == Status.OUT
    with pytest.raises(InputError):
        raag_sigma1(G, {})


def test_raag_sigma2_on_square():
    G = nx.cycle_graph(4)
    assert raag_sigma2(G, {v: 1 for v in G}).status == Status.OUT
    # one dead vertex: its living link is two non-adjacent vertices
    assert raag_sigma2(G, {0: 0, 1: 1, 2: 1, 3: 1}).status == Status.OUT


def test_raag_sigma2_on_chordal_graph():
    G = nx.complete_graph(3)
    verdict = raag_sigma2(G, {0: 1, 1: 0, 2: 0})
    assert verdict.status == Status.IN
    assert any("chordal" in r for r in verdict.reasons)


def test_commutation_graph_n3():
    G = commutation_graph(3)
    assert G.number_of_nodes() == 6
    # alpha_12 and alpha_32 share the base and commute
    assert G.has_edge((1, 2), (3, 2))


# -------------------------------------------------
# Sigma^2 through the commutation graph
# -------------------------------------------------

def test_meinert_quotient_check_flags_missing_commutator():
    X = ["a", "b", "g"]
    R1 = [commutator_word("g", "a")]
    r = FormalWord.parse("a b a^-1 b^-1")
    report = meinert_quotient_check(X, [r], R1, {"g": Fraction(1)}, {r: "g"})
    assert not report.passed
    assert "[g, b]" in report.failures[0][1]

    R1 = [commutator_word("g", "a"), commutator_word("g", "b")]
    assert meinert_quotient_check(X, [r], R1, {"g": Fraction(1)}, {r: "g"}).passed
    assert not meinert_quotient_check(X, [r], R1, {"g": Fraction(0)}, {r: "g"}).passed


def test_meinert_quotient_check_rejects_non_commutators():
    with pytest.raises(InputError):
        meinert_quotient_check(["a"], [], [FormalWord.parse("a a")], {}, {})


@pytest.mark.slow
def test_meinert_graph_on_ten_labels():
    G = build_meinert_graph(10)
    assert all(meinert_graph_properties(G).values())
    assert is_chordal(G)
    X, R, R1, witnesses = meinert_instance(10, MEINERT_S, G)
    assert all(r in witnesses for r in R)


@pytest.mark.slow
def test_sigma2_sufficient_on_s_supported_character():
    verdict = sigma2_sufficient(load_character("s_supported_10.json"))
    assert verdict.status == Status.IN


def test_sigma2_sufficient_needs_ten_labels():
    with pytest.raises(InputError):
        sigma2_sufficient(powers_of_three_character(4))
