"""Tests for the 64 aggregated core coefficients and their sign dichotomy.

TRUE_FORMS below is an independently frozen copy of the verified table: each
sorted weight triple maps to (shift, inner coefficients) with the entry equal
to r**(3*n_sites + shift) times the inner polynomial.  Eight entry classes of
the reference closed forms disagree with these computed values; the
comparison report flags them as possible errata rather than adopting them.
"""

import pytest

from potts_ghs import (
    LaurentPoly,
    REFERENCE_FORMS,
    alpha,
    alpha_table,
    compare_reference,
    format_table,
    sign_report,
    table_export,
)

TRUE_FORMS = {
    (3, 3, 3): (-6, {2: 1, 1: -3, 0: 2}),
    (3, 3, 0): (-6, {2: 1, 1: -3, 0: 2}),
    (3, 3, 2): (-6, {2: 3, 1: -9, 0: 6}),
    (3, 3, 1): (-6, {2: 3, 1: -9, 0: 6}),
    (3, 2, 2): (-6, {3: 2, 1: -14, 0: 12}),
    (3, 2, 1): (-6, {3: 4, 2: -9, 1: -1, 0: 6}),
    (3, 2, 0): (-5, {2: 2, 1: -6, 0: 4}),
    (3, 1, 1): (-5, {3: 1, 2: 1, 1: -10, 0: 8}),
    (3, 1, 0): (-4, {2: 1, 1: -3, 0: 2}),
    (3, 0, 0): (0, {}),
    (2, 2, 2): (-6, {4: 2, 3: 6, 2: -26, 1: 6, 0: 12}),
    (2, 2, 1): (-5, {3: 6, 2: -8, 1: -18, 0: 20}),
    (2, 2, 0): (-4, {2: 4, 1: -12, 0: 8}),
    (2, 1, 1): (-4, {3: 2, 2: 3, 1: -23, 0: 18}),
    (2, 1, 0): (-3, {2: 2, 1: -6, 0: 4}),
    (2, 0, 0): (0, {}),
    (1, 1, 1): (-3, {3: 1, 2: 3, 1: -16, 0: 12}),
    (1, 1, 0): (-2, {2: 1, 1: -3, 0: 2}),
    (1, 0, 0): (0, {}),
    (0, 0, 0): (0, {}),
}

MISMATCHING_REPRESENTATIVES = {
    "3,2,2",
    "3,2,1",
    "3,2,0",
    "3,1,1",
    "2,2,2",
    "2,2,1",
    "2,2,0",
    "2,1,1",
}


def true_entry(x, y, z, n_sites=3):
    shift, inner = TRUE_FORMS[tuple(sorted((x, y, z), reverse=True))]
    return LaurentPoly(inner).shift(3 * n_sites + shift)


def all_triples():
    return [(x, y, z) for x in range(4) for y in range(4) for z in range(4)]


# ---------------------------------------------------------------------------
# the table itself


def test_every_entry_matches_the_frozen_table():
    for triple in all_triples():
        assert alpha(*triple) == true_entry(*triple), triple


def test_entries_are_permutation_symmetric():
    assert alpha(3, 2, 1) == alpha(1, 2, 3) == alpha(2, 3, 1)
    assert alpha(2, 2, 0) == alpha(0, 2, 2) == alpha(2, 0, 2)


def test_entries_scale_by_cubes_per_extra_site():
    for triple in ((3, 3, 3), (2, 1, 1), (1, 1, 1), (3, 2, 0)):
        base = alpha(*triple, n_sites=3)
        assert alpha(*triple, n_sites=4) == base.shift(3)
        assert alpha(*triple, n_sites=5) == base.shift(6)


def test_entries_vanish_at_one_and_two_states():
    for triple in all_triples():
        entry = alpha(*triple)
        assert entry.evaluate(1) == 0
        assert entry.evaluate(2) == 0


def test_alpha_validates_arguments():
    with pytest.raises(ValueError, match="row weight"):
        alpha(4, 0, 0)
    with pytest.raises(ValueError, match="row weight"):
        alpha(1, -1, 0)
    with pytest.raises(ValueError, match="n_sites"):
        alpha(1, 1, 1, n_sites=2)


def test_symmetry_classes():
    table = alpha_table(3)
    assert len(table.entries) == 64
    assert len(table.symmetry_classes) == 15
    assert sum(len(cls) for cls in table.symmetry_classes) == 64
    classes = {frozenset(cls) for cls in table.symmetry_classes}
    assert frozenset({(3, 3, 3), (3, 3, 0), (3, 0, 3), (0, 3, 3)}) in classes
    zero_class = next(
        cls for cls in table.symmetry_classes if table.entries[cls[0]] == LaurentPoly.zero()
    )
    assert len(zero_class) == 10
    for cls in table.symmetry_classes:
        values = {table.entries[t] for t in cls}
        assert len(values) == 1


# ---------------------------------------------------------------------------
# sign dichotomy


def test_sign_dichotomy_across_state_counts():
    table = alpha_table(3)
    report = sign_report(table, tuple(range(2, 11)))
    assert report["dichotomy_holds"] is True
    assert report["r_values"] == list(range(2, 11))
    for r in range(2, 11):
        per = report["per_r"][str(r)]
        assert per["verdict"] == "pass"
        assert per["violations"] == []
        assert per["expected"] == ("<=0" if r == 2 else ">=0")
        assert sum(per["sign_counts"].values()) == 64


def test_signs_at_two_states_are_all_zero():
    report = sign_report(alpha_table(3), (2,))
    assert report["per_r"]["2"]["sign_counts"] == {"-1": 0, "0": 64, "+1": 0}


def test_signs_at_three_states():
    report = sign_report(alpha_table(3), (3,))
    assert report["per_r"]["3"]["sign_counts"] == {"-1": 0, "0": 10, "+1": 54}


def test_sign_report_rejects_bad_state_counts():
    table = alpha_table(3)
    with pytest.raises(ValueError):
        sign_report(table, (1,))
    with pytest.raises(ValueError):
        sign_report(table, ())
    with pytest.raises(ValueError):
        sign_report(table, (2.5,))


# ---------------------------------------------------------------------------
# reference comparison


def test_reference_forms_cover_all_triples_once():
    covered = [t for form in REFERENCE_FORMS for t in form.triples]
    assert len(REFERENCE_FORMS) == 18
    assert len(covered) == 64
    assert sorted(covered) == sorted(all_triples())


def test_comparison_verdicts_are_frozen():
    report = compare_reference(alpha_table(3))
    assert report["matches"] == 10
    assert report["mismatches"] == 8
    assert report["coverage_complete"] is True
    assert report["oracle_agreement"] is True
    mismatched = {
        rec["entry"] for rec in report["classes"] if rec["verdict"] == "mismatch"
    }
    assert mismatched == MISMATCHING_REPRESENTATIVES
    for rec in report["classes"]:
        assert rec["class_uniform"] is True
        if rec["verdict"] == "mismatch":
            assert "erratum" in rec["note"]
        else:
            assert "note" not in rec


def test_comparison_record_shapes():
    report = compare_reference(alpha_table(3))
    by_entry = {rec["entry"]: rec for rec in report["classes"]}
    full = by_entry["2,2,2"]
    assert full["reference"] == "r^(3n-6)*(2r^4+6r^3-28r^2+8r+12)"
    assert full["computed"] == "r^3*(2*r^4 + 6*r^3 - 26*r^2 + 6*r + 12)"
    assert full["triples"] == ["2,2,2"]
    agreeing = by_entry["3,3,3"]
    assert agreeing["verdict"] == "match"
    assert agreeing["computed"] == "r^3*(r^2 - 3*r + 2)"
    assert set(agreeing["triples"]) == {"3,3,3", "3,3,0", "3,0,3", "0,3,3"}


def test_mismatching_entries_match_the_frozen_truth_instead():
    # The eight flagged classes disagree with the reference but agree with
    # the independently frozen values — the point of the honest comparison.
    for rep in MISMATCHING_REPRESENTATIVES:
        x, y, z = (int(w) for w in rep.split(","))
        assert alpha(x, y, z) == true_entry(x, y, z)
        reference = next(
            form for form in REFERENCE_FORMS if form.representative == (x, y, z)
        )
        assert alpha(x, y, z) != reference.poly(3)


# ---------------------------------------------------------------------------
# rendering


def test_table_export_shape():
    export = table_export(alpha_table(3), r_values=(2, 3))
    assert export["n_sites"] == 3
    assert len(export["entries"]) == 64
    entry = export["entries"]["3,3,3"]
    assert entry["factored"] == "r^3*(r^2 - 3*r + 2)"
    assert entry["polynomial"] == "r^5 - 3*r^4 + 2*r^3"
    assert entry["signs"] == {"2": 0, "3": 1}
    assert len(export["symmetry_classes"]) == 15


def test_format_table_lists_every_entry():
    text = format_table(alpha_table(3))
    lines = text.splitlines()
    assert len(lines) == 66  # header + rule + 64 rows
    assert lines[0].endswith("entry")
    assert any("0,0,0" in line and line.rstrip().endswith("0") for line in lines)
    assert any("r^3*(r^2 - 3*r + 2)" in line for line in lines)
