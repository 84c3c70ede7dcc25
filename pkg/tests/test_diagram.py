import random

import pytest

from wld.diagram import (Diagram, DiagramError, ParseError, arcs, closure,
                         linking_matrix, parse, random_diagram, same_diagram,
                         serialize)

TREFOIL = "component: O1+ U2+ O3+ U1+ O2+ U3+\n"
HOPF = "component: O1+ U2+\ncomponent: U1+ O2+\n"


def test_parse_trefoil():
    d = parse(TREFOIL)
    assert d.mu == 1
    assert d.crossing_count == 3
    assert d.kind == "link"


def test_parse_empty_component_is_unknot():
    d = parse("component:\n")
    assert d.mu == 1 and d.crossing_count == 0


def test_parse_hopf_two_lines():
    d = parse(HOPF)
    assert d.mu == 2 and d.crossing_count == 2


def test_parse_comments_and_blank_lines():
    d = parse("# a knot\n\ncomponent: O1+ U1+\n")
    assert d.crossing_count == 1


def test_parse_stringlink_header():
    d = parse("stringlink\ncomponent: O1+\ncomponent: U1+\n")
    assert d.kind == "stringlink"


def test_parse_unknown_token():
    with pytest.raises(ParseError):
        parse("component: X1+\n")


def test_parse_reports_line_number():
    with pytest.raises(ParseError) as err:
        parse("component:\ncomponent: Q9+\n")
    assert err.value.line == 2


def test_parse_unbalanced_crossing():
    with pytest.raises(ParseError):
        parse("component: O1+ O1+\n")
    with pytest.raises(ParseError):
        parse("component: O1+\n")


def test_parse_sign_mismatch():
    with pytest.raises(ParseError):
        parse("component: O1+ U1-\n")


def test_serialize_round_trip_exact():
    rng = random.Random(1)
    for _ in range(200):
        d = random_diagram(rng)
        assert parse(serialize(d)) == d


def test_serialize_canonicalizes_whitespace():
    text = "component:   O1+    U1+  \n"
    assert serialize(parse(text)) == "component: O1+ U1+\n"


def test_serialize_unknot():
    assert serialize(parse("component:\n")) == "component:\n"


def test_passage_counts():
    rng = random.Random(2)
    for _ in range(50):
        d = random_diagram(rng)
        overs = sum(1 for c in d.components for p in c if p.role == "O")
        unders = sum(1 for c in d.components for p in c if p.role == "U")
        assert overs == unders == d.crossing_count


def test_closure_basics():
    sl = parse("stringlink\ncomponent:\ncomponent:\n")
    link = closure(sl)
    assert link.kind == "link" and link.mu == 2 and link.crossing_count == 0
    with pytest.raises(DiagramError):
        closure(link)


def test_closure_preserves_passages():
    rng = random.Random(3)
    for _ in range(50):
        sl = random_diagram(rng, kind="stringlink")
        link = closure(sl)
        assert link.components == sl.components
        assert link.crossing_count == sl.crossing_count


def test_arcs_trefoil():
    assert len(arcs(parse(TREFOIL))) == 3


def test_arcs_unknot():
    assert len(arcs(parse("component:\n"))) == 1


def test_arcs_hopf():
    by_comp = {}
    for arc in arcs(parse(HOPF)):
        by_comp[arc.component] = by_comp.get(arc.component, 0) + 1
    assert by_comp == {0: 1, 1: 1}


def test_arcs_partition_links():
    rng = random.Random(4)
    for _ in range(100):
        d = random_diagram(rng)
        decomposition = arcs(d)
        for ci, comp in enumerate(d.components):
            mine = [a for a in decomposition if a.component == ci]
            unders = sum(1 for p in comp if p.role == "U")
            assert len(mine) == max(1, unders)
            covered = sorted(pos for a in mine for pos in a.positions)
            assert covered == list(range(len(comp)))


def test_linking_matrix_hopf():
    lam = linking_matrix(parse(HOPF))
    assert lam[0][1] == 1 and lam[1][0] == 1


def test_linking_matrix_unlink():
    d = Diagram(((), (), ()), "link")
    assert linking_matrix(d) == [[0] * 3 for _ in range(3)]


def test_basepoint_rotation_invariance():
    d = parse(TREFOIL)
    comp = d.components[0]
    for r in range(len(comp)):
        rotated = Diagram((comp[r:] + comp[:r],), "link")
        assert same_diagram(d, rotated)
        assert linking_matrix(rotated) == linking_matrix(d)
        assert len(arcs(rotated)) == len(arcs(d))


def test_canonical_key_detects_difference():
    left = parse("component: O1+ U1+\n")
    right = parse("component: O1- U1-\n")
    assert not same_diagram(left, right)


def test_canonical_key_relabeling():
    a = parse("component: O7+ U9-\ncomponent: U7+ O9-\n")
    b = parse("component: O1+ U2-\ncomponent: U1+ O2-\n")
    assert same_diagram(a, b)


def test_diagram_requires_component():
    with pytest.raises(DiagramError):
        Diagram((), "link")


def test_arcs_partition_string_links():
    rng = random.Random(14)
    for _ in range(60):
        d = random_diagram(rng, kind="stringlink")
        decomposition = arcs(d)
        for ci, comp in enumerate(d.components):
            mine = [a for a in decomposition if a.component == ci]
            unders = sum(1 for p in comp if p.role == "U")
            # open strands carry a leading arc and a possibly passage-free
            # trailing arc
            assert len(mine) == unders + 1
            covered = sorted(pos for a in mine for pos in a.positions)
            assert covered == list(range(len(comp)))


def test_canonical_key_invariant_under_rotation_and_relabeling():
    rng = random.Random(15)
    for _ in range(60):
        d = random_diagram(rng, max_crossings=8, max_mu=3)
        ids = d.crossing_ids()
        shuffled = ids[:]
        rng.shuffle(shuffled)
        relabel = dict(zip(ids, shuffled))
        comps = []
        for comp in d.components:
            comp = tuple(type(p)(relabel[p.crossing], p.role, p.sign) for p in comp)
            if comp:
                r = rng.randrange(len(comp))
                comp = comp[r:] + comp[:r]
            comps.append(comp)
        other = Diagram(tuple(comps), d.kind)
        assert same_diagram(d, other)
