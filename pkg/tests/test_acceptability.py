import itertools

import pytest

from conftest import load_fixture

from gradarg import (
    EnumerationBoundError,
    Extension,
    LEAF_VALUE,
    Verdict,
    categoriser,
    classification_report,
    classify,
    compare,
    compatibility_scan,
    defends,
    evaluate_cyclic,
    evaluate_local,
    generate_family,
    induced_preorder,
    is_conflict_free,
    max_based,
    parse_framework,
    preferred_extensions,
    random_acyclic_graph,
    random_attack_graph,
    rooted_labelling,
    scan_graph_stream,
    stable_extensions,
    valuation_preference,
    well_defended,
)
from gradarg.acceptability import CLEAN_LEVELS


def oracle_extensions(g):
    """All preferred and stable extensions by brute force over subsets."""
    names = g.arguments
    attacks = set(g.attacks)

    def conflict_free(sub):
        return not any((a, b) in attacks for a in sub for b in sub)

    def self_defending(sub):
        s = set(sub)
        return all(
            any((c, b) in attacks for c in s)
            for a in sub
            for b in names
            if (b, a) in attacks
        )

    subsets = [
        frozenset(sub)
        for r in range(len(names) + 1)
        for sub in itertools.combinations(names, r)
    ]
    admissible = [s for s in subsets if conflict_free(s) and self_defending(s)]
    preferred = [s for s in admissible if not any(s < t for t in admissible)]
    stable = [
        s
        for s in subsets
        if conflict_free(s)
        and all(any((a, b) in attacks for a in s) for b in names if b not in s)
    ]
    key = lambda s: (len(s), sorted(s))
    return sorted(preferred, key=key), sorted(stable, key=key)


class TestDefinitions:
    def test_conflict_freeness(self):
        g = load_fixture("example1")
        assert is_conflict_free(g, {"A1", "A4"})
        assert not is_conflict_free(g, {"A2", "A3"})
        assert is_conflict_free(g, set())

    def test_collective_defence(self):
        g = load_fixture("example1")
        assert not defends(g, {"A4"}, "A3")  # nobody counters A2
        assert defends(g, {"A1", "A4"}, "A1")
        assert defends(g, set(), "A1")  # unattacked needs no help

    def test_extension_container(self):
        e = Extension(("A1", "A4"))
        assert "A1" in e and "A2" not in e
        assert len(e) == 2
        assert e.render() == "{A1,A4}"


class TestEnumeration:
    def test_reference_graph(self):
        g = load_fixture("example1")
        (preferred,) = preferred_extensions(g)
        assert preferred.members == ("A1", "A4")
        assert stable_extensions(g) == [preferred]

    def test_mutual_attack_splits(self):
        g = generate_family("unattacked-cycle", size=2)
        assert [e.members for e in preferred_extensions(g)] == [("C1",), ("C2",)]
        assert [e.members for e in stable_extensions(g)] == [("C1",), ("C2",)]

    def test_odd_cycle_starves_stable_semantics(self):
        g = generate_family("unattacked-cycle", size=3)
        assert [e.members for e in preferred_extensions(g)] == [()]
        assert stable_extensions(g) == []

    def test_matches_brute_force(self):
        stream = scan_graph_stream(7, size_bound=5)
        for _ in range(500):
            g = next(stream)
            got_preferred = [frozenset(e.members) for e in preferred_extensions(g)]
            got_stable = [frozenset(e.members) for e in stable_extensions(g)]
            want_preferred, want_stable = oracle_extensions(g)
            assert got_preferred == want_preferred, g.serialize()
            assert got_stable == want_stable, g.serialize()

    def test_structural_laws(self):
        stream = scan_graph_stream(23)
        for _ in range(500):
            g = next(stream)
            preferred = preferred_extensions(g)
            stable = stable_extensions(g)
            assert preferred  # at least one always exists
            preferred_sets = {frozenset(e.members) for e in preferred}
            leaves = g.leaves()
            for e in stable:
                assert frozenset(e.members) in preferred_sets
            for e in preferred + stable:
                members = set(e.members)
                assert is_conflict_free(g, members)
                assert leaves <= members  # unattacked arguments always belong

    def test_enumeration_bound(self):
        big = random_attack_graph(seed=0, size=26, density=0.05)
        with pytest.raises(EnumerationBoundError):
            preferred_extensions(big)
        with pytest.raises(EnumerationBoundError):
            classify(big)


class TestClassify:
    def test_tiny_cases(self):
        assert classify(parse_framework("arg(a).")) == {"a": "uni"}
        chain = parse_framework("arg(a). arg(b). att(b,a).")
        assert classify(chain) == {"a": "not-accepted", "b": "uni"}
        cycle = generate_family("unattacked-cycle", size=2)
        assert classify(cycle) == {"C1": "only-exi", "C2": "only-exi"}

    def test_star_graph(self):
        levels = classify(load_fixture("star3"))
        assert levels == {
            "A": "uni",
            "B1": "not-accepted", "B2": "not-accepted", "B3": "not-accepted",
            "C1": "uni", "C2": "uni", "C3": "uni",
        }

    def test_unknown_semantics(self):
        with pytest.raises(ValueError):
            classify(load_fixture("example1"), "grounded")

    def test_universal_membership_silences_all_attackers(self):
        # membership in every extension forces every direct attacker out
        # of every extension, straight from conflict-freeness
        stream = scan_graph_stream(23)
        for _ in range(500):
            g = next(stream)
            extensions = [set(e.members) for e in preferred_extensions(g)]
            levels = classify(g, "preferred")
            for name, level in levels.items():
                in_all = extensions and all(name in s for s in extensions)
                assert (level == "uni") == bool(in_all)
                if in_all:
                    for b in g.attackers_of(name):
                        assert not any(b in s for s in extensions)
                    assert level in CLEAN_LEVELS

    def test_partial_acceptance_exists(self):
        # an argument in one extension with its attacker in another
        levels = classify(generate_family("unattacked-cycle", size=2))
        assert set(levels.values()) == {"only-exi"}

    def test_clean_but_not_universal_is_reachable(self):
        stream = scan_graph_stream(11)
        for trial in range(1, 5001):
            g = next(stream)
            levels = classify(g, "preferred")
            witnesses = [a for a, lv in levels.items() if lv == "cleanly"]
            if witnesses:
                # double-check the witness against the raw definition
                extensions = [set(e.members) for e in preferred_extensions(g)]
                for a in witnesses:
                    assert any(a in s for s in extensions)
                    assert not all(a in s for s in extensions)
                    for b in g.attackers_of(a):
                        assert not any(b in s for s in extensions)
                return
        pytest.fail("no cleanly-but-not-uni argument within 5000 graphs")

    def test_stable_semantics_collapses_the_distinction(self):
        stream = scan_graph_stream(31)
        for _ in range(500):
            g = next(stream)
            assert "cleanly" not in classify(g, "stable").values()

    def test_no_odd_cycle_collapses_the_distinction(self):
        stream = scan_graph_stream(37)
        seen = 0
        while seen < 500:
            g = next(stream)
            if g.has_odd_cycle():
                continue
            seen += 1
            assert "cleanly" not in classify(g, "preferred").values()


class TestWellDefended:
    def test_chain(self):
        g = parse_framework(
            "arg(B1). arg(C1). arg(D1). att(C1,B1). att(D1,C1)."
        )
        values = evaluate_local(g, categoriser())
        defended = well_defended(g, valuation_preference(values))
        assert defended == {"D1", "B1"}

    def test_maximal_attacker_disqualifies(self):
        g = load_fixture("example4")
        values = evaluate_cyclic(g)
        assert values["B4"] == LEAF_VALUE
        defended = well_defended(g, valuation_preference(values))
        assert "A" not in defended

    def test_incomparability_counts_in_favour(self):
        g = load_fixture("example4")
        trimmed = [
            line
            for line in g.serialize().splitlines()
            if line.strip() != "att(B4,A)."
        ]
        h = parse_framework("\n".join(trimmed))
        values = evaluate_cyclic(h)
        for b in h.attackers_of("A"):
            outcome = compare(values[b], values["A"])
            assert outcome.verdict is Verdict.INCOMPARABLE
        assert "A" in well_defended(h, valuation_preference(values))

    def test_mutual_attack_is_a_stand_off(self):
        g = generate_family("unattacked-cycle", size=2)
        for values in (
            evaluate_local(g, categoriser()),
            evaluate_local(g, rooted_labelling()),
            evaluate_cyclic(g),
        ):
            assert well_defended(g, valuation_preference(values)) == {"C1", "C2"}

    def test_unattacked_always_qualifies(self):
        g = load_fixture("example6")
        values = evaluate_local(g, categoriser())
        defended = well_defended(g, valuation_preference(values))
        assert g.leaves() <= defended


class TestCompatibility:
    def test_acceptance_equals_defence_for_max_combination(self):
        for seed in range(200):
            g = random_acyclic_graph(seed, 3 + seed % 10, 0.45)
            (extension,) = preferred_extensions(g)
            values = evaluate_local(g, max_based())
            defended = well_defended(g, valuation_preference(values))
            assert set(extension.members) == set(defended), g.serialize()

    def test_single_attacker_orderings(self):
        for seed in range(200):
            g = random_acyclic_graph(seed, 3 + seed % 10, 0.45)
            (extension,) = preferred_extensions(g)
            accepted = set(extension.members)
            order = induced_preorder(evaluate_local(g, max_based()))
            for a in g.arguments:
                attackers = g.attackers_of(a)
                if len(attackers) != 1:
                    continue
                (b,) = attackers
                if a in accepted:
                    assert order.geq(a, b)
                else:
                    assert order.geq(b, a)

    def test_spider_graphs_align_acceptance_and_defence(self):
        premise_hits = 0
        for seed in range(50):
            g = generate_family("spider", seed=seed)
            (extension,) = preferred_extensions(g)
            accepted = set(extension.members)
            values = evaluate_cyclic(g)
            defended = well_defended(g, valuation_preference(values))
            for b in g.arguments:
                if b == "A":
                    continue
                assert (b in accepted) == (b in defended), (seed, b)
            if "A" in accepted:
                assert "A" in defended, seed
            if values["A"].odd.is_empty:
                premise_hits += 1
                if "A" in defended:
                    assert "A" in accepted, seed
        assert premise_hits  # the all-defence premise occurs in the sample

    def test_sum_combination_breaks_the_alignment(self):
        g = load_fixture("star3")
        values = evaluate_local(g, categoriser())
        defended = well_defended(g, valuation_preference(values))
        assert defended == {"C1", "C2", "C3"}
        (extension,) = preferred_extensions(g)
        assert extension.members == ("A", "C1", "C2", "C3")
        assert classify(g)["A"] == "uni"  # accepted yet not well-defended

    def test_star_shape_divides_the_valuations(self):
        g = load_fixture("star3")
        tuple_values = evaluate_cyclic(g)
        label_values = evaluate_local(g, rooted_labelling())
        assert "A" in well_defended(g, valuation_preference(tuple_values))
        assert "A" in well_defended(g, valuation_preference(label_values))


class TestCompatibilityScan:
    def test_sum_instance_yields_both_witnesses(self):
        report = compatibility_scan("categoriser", seed=1, trials=5000)
        assert report.valuation == "categoriser"
        assert report.complete
        for witness in (report.cleanly_not_defended, report.defended_not_cleanly):
            g = witness.graph
            values = evaluate_local(g, categoriser())
            defended = well_defended(g, valuation_preference(values))
            clean = classify(g)[witness.argument] in CLEAN_LEVELS
            if witness.direction == "cleanly-not-defended":
                assert clean and witness.argument not in defended
            else:
                assert witness.argument in defended and not clean

    def test_tuple_valuation_yields_both_witnesses(self):
        report = compatibility_scan("tuples", seed=1, trials=5000)
        assert report.valuation == "tuples"
        assert report.complete

    def test_label_valuation_never_undercuts_clean_acceptance(self):
        # a strictly better attacker would carry the top label, and the
        # top-labelled set is admissible, so clean acceptance always
        # coincides with defence on this side
        report = compatibility_scan("rooted_labelling", seed=1, trials=2000)
        assert report.cleanly_not_defended is None
        assert report.defended_not_cleanly is not None

    def test_acyclic_max_scan_finds_nothing(self):
        report = compatibility_scan(
            max_based(), seed=1, trials=400, acyclic_only=True
        )
        assert report.cleanly_not_defended is None
        assert report.defended_not_cleanly is None
        assert report.trials_used == 400

    def test_budget_is_validated(self):
        with pytest.raises(ValueError):
            compatibility_scan("categoriser", seed=1, trials=0)
        with pytest.raises(ValueError):
            compatibility_scan("nope", seed=1, trials=10)


class TestReport:
    def test_bundles_everything(self):
        g = load_fixture("star3")
        report = classification_report(
            g,
            valuations={
                "categoriser": evaluate_local(g, categoriser()),
                "tuples": evaluate_cyclic(g),
            },
        )
        assert report.semantics == "preferred"
        assert [e.members for e in report.extensions] == [("A", "C1", "C2", "C3")]
        assert report.level == classify(g)
        assert report.well_defended["categoriser"] == {"C1", "C2", "C3"}
        assert "A" in report.well_defended["tuples"]

    def test_stable_variant(self):
        g = load_fixture("example1")
        report = classification_report(g, semantics="stable")
        assert report.semantics == "stable"
        assert report.level["A1"] == "uni"
        assert report.well_defended == {}
