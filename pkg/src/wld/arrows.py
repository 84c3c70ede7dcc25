"""w-arrow presentations and arrow calculus.

A presentation is a crossing-free base diagram together with signed
w-arrows.  Surgery turns each arrow into one classical crossing: over at
the tail, under at the head, with the arrow's sign.  On Gauss codes the
base carries no passages, so a presentation is just the per-strand order of
arrow endpoints plus the signs; twists are absorbed into the sign, which is
calibrated so that the closure of H_ij(a) has ordered linking numbers
(a, 0) and that of Hbar_ij(b) has (0, b).

Arrow move catalog: AR1-AR6 involve only virtual crossings and twist pairs
and act trivially on this data; AR7 exchanges adjacent tails (surgery image
OC), AR8/AR10 delete an arrow whose ends are adjacent (R1 kink), AR9
cancels an opposite-sign parallel pair (R2).  The heads-exchange move (and
its H/H' avatars) swaps adjacent heads, whose surgery image is the
forbidden UC.  A(n), A^n and the antiparallel Abar(n), Abar^n insert or
delete the arrow blocks whose surgery images are the V(n)/V^n twist and
parallel blocks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .diagram import (OVER, STRING_LINK, UNDER, Diagram, DiagramError,
                      ParseError, Passage)
from .moves import EXPAND, MoveError

TAIL = "T"
HEAD = "H"

ARROW_MOVE_NAMES = (
    "ar1", "ar2", "ar3", "ar4", "ar5", "ar6", "ar7", "ar8", "ar9", "ar10",
    "ar11", "ar12", "heads-exchange", "head-tail-exchange", "h", "hprime",
    "head-tail-reversal", "ends-exchange", "a(n)", "a^n", "abar(n)", "abar^n",
)
_NOOP_MOVES = ("ar1", "ar2", "ar3", "ar4", "ar5", "ar6", "ar11", "ar12")
_PARAMETRIC_MOVES = ("a(n)", "a^n", "abar(n)", "abar^n")


@dataclass(frozen=True)
class WArrow:
    """One w-arrow: endpoint slots on the base, and the sign of the
    classical crossing its surgery produces."""

    tail: tuple  # (component, slot index)
    head: tuple
    sign: int


@dataclass(frozen=True)
class WArrowPresentation:
    """Crossing-free base plus ordered arrow endpoints.

    ``strands[c]`` lists endpoint tokens ``(arrow_id, TAIL|HEAD)`` along
    component ``c``; ``signs`` maps arrow id to the crossing sign.
    """

    strands: tuple
    signs: tuple  # sorted tuple of (arrow_id, sign)
    kind: str = STRING_LINK

    def __post_init__(self):
        object.__setattr__(self, "strands", tuple(tuple(s) for s in self.strands))
        sign_map = dict(self.signs)
        object.__setattr__(self, "signs", tuple(sorted(sign_map.items())))
        seen = {}
        for ci, strand in enumerate(self.strands):
            for tok in strand:
                aid, role = tok
                if role not in (TAIL, HEAD):
                    raise DiagramError(f"bad arrow token {tok!r}")
                roles = seen.setdefault(aid, set())
                if role in roles:
                    raise DiagramError(f"arrow {aid} has two {role} ends")
                roles.add(role)
        for aid, roles in seen.items():
            if roles != {TAIL, HEAD}:
                raise DiagramError(f"arrow {aid} is missing an endpoint")
            if aid not in sign_map:
                raise DiagramError(f"arrow {aid} has no sign")
        for aid, sign in sign_map.items():
            if aid not in seen:
                raise DiagramError(f"sign given for unknown arrow {aid}")
            if sign not in (1, -1):
                raise DiagramError(f"bad sign for arrow {aid}")

    @property
    def mu(self):
        return len(self.strands)

    @property
    def base(self):
        return Diagram(tuple(() for _ in self.strands), self.kind)

    @property
    def sign_map(self):
        return dict(self.signs)

    def arrow_ids(self):
        return sorted(dict(self.signs))

    @property
    def arrows(self):
        """WArrow views with (component, slot) endpoint coordinates."""
        where = {}
        for ci, strand in enumerate(self.strands):
            for slot, (aid, role) in enumerate(strand):
                where[(aid, role)] = (ci, slot)
        sm = self.sign_map
        return [WArrow(where[(aid, TAIL)], where[(aid, HEAD)], sm[aid])
                for aid in self.arrow_ids()]

    def fresh_arrow_id(self):
        ids = self.arrow_ids()
        return (ids[-1] + 1) if ids else 1


def trivial_string_link(mu):
    return WArrowPresentation(tuple(() for _ in range(mu)), (), STRING_LINK)


def surgery(p):
    """Replace every arrow by one classical crossing (over at its tail)."""
    comps = []
    for strand in p.strands:
        seq = []
        sm = p.sign_map
        for aid, role in strand:
            seq.append(Passage(aid, OVER if role == TAIL else UNDER, sm[aid]))
        comps.append(tuple(seq))
    return Diagram(tuple(comps), p.kind)


def to_arrows(d):
    """Arrow presentation of a diagram: one arrow per classical crossing,
    tail at the over passage, head at the under passage, same sign."""
    strands = []
    signs = {}
    for comp in d.components:
        strand = []
        for psg in comp:
            strand.append((psg.crossing, TAIL if psg.role == OVER else HEAD))
            signs[psg.crossing] = psg.sign
        strands.append(tuple(strand))
    return WArrowPresentation(tuple(strands), tuple(sorted(signs.items())), d.kind)


def stack(p, q):
    """Stacking product of two string-link presentations with equal mu."""
    if p.kind != STRING_LINK or q.kind != STRING_LINK:
        raise DiagramError("stacking needs string-link presentations")
    if p.mu != q.mu:
        raise DiagramError("stacking needs equal strand counts")
    offset = max(p.arrow_ids(), default=0)
    strands = []
    for sp, sq in zip(p.strands, q.strands):
        strands.append(tuple(sp) + tuple((aid + offset, role) for aid, role in sq))
    signs = dict(p.signs)
    for aid, sign in q.signs:
        signs[aid + offset] = sign
    return WArrowPresentation(tuple(strands), tuple(sorted(signs.items())), STRING_LINK)


def build_H(mu, i, j, a):
    """H_ij(a): |a| arrows tail-on-strand-i, head-on-strand-j whose closure
    has ordered linking numbers (a, 0)."""
    _check_pair(mu, i, j)
    sign = 1 if a >= 0 else -1
    strands = [[] for _ in range(mu)]
    for k in range(1, abs(a) + 1):
        strands[i - 1].append((k, TAIL))
        strands[j - 1].append((k, HEAD))
    return WArrowPresentation(tuple(tuple(s) for s in strands),
                              tuple((k, sign) for k in range(1, abs(a) + 1)),
                              STRING_LINK)


def build_Hbar(mu, i, j, b):
    """Hbar_ij(b): |b| arrows tail-on-strand-j, head-on-strand-i; closure
    linking numbers (0, b)."""
    _check_pair(mu, i, j)
    sign = 1 if b >= 0 else -1
    strands = [[] for _ in range(mu)]
    for k in range(1, abs(b) + 1):
        strands[j - 1].append((k, TAIL))
        strands[i - 1].append((k, HEAD))
    return WArrowPresentation(tuple(tuple(s) for s in strands),
                              tuple((k, sign) for k in range(1, abs(b) + 1)),
                              STRING_LINK)


def _check_pair(mu, i, j):
    if not (1 <= i < j <= mu):
        raise DiagramError(f"need 1 <= i < j <= mu, got i={i} j={j} mu={mu}")


# ---------------------------------------------------------------------------
# text format

def parse_presentation(text):
    """Parse the ``arrows`` file format.

    Header line ``arrows``; then the base diagram (crossing-free) in the
    diagram format; then lines ``arrow: <comp>.<slot> <comp>.<slot> <+|->``
    giving tail and head positions, 1-based.
    """
    lines = text.splitlines()
    base_lines = []
    arrow_lines = []
    header_seen = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not header_seen:
            if line != "arrows":
                raise ParseError("presentation text must start with 'arrows'", lineno)
            header_seen = True
            continue
        if line.startswith("arrow:"):
            arrow_lines.append((lineno, line))
        else:
            base_lines.append(line)
    if not header_seen:
        raise ParseError("presentation text must start with 'arrows'")
    from .diagram import parse as parse_diagram
    base = parse_diagram("\n".join(base_lines))
    if base.crossing_count:
        raise ParseError("presentation base must be crossing-free")
    slots = [{} for _ in range(base.mu)]
    signs = {}
    for aid, (lineno, line) in enumerate(arrow_lines, start=1):
        fields = line[len("arrow:"):].split()
        if len(fields) != 3 or fields[2] not in "+-":
            raise ParseError(f"bad arrow line {line!r}", lineno)
        for role, field in ((TAIL, fields[0]), (HEAD, fields[1])):
            comp_s, _, slot_s = field.partition(".")
            if not (comp_s.isdigit() and slot_s.isdigit()):
                raise ParseError(f"bad arrow position {field!r}", lineno)
            comp, slot = int(comp_s), int(slot_s)
            if not 1 <= comp <= base.mu:
                raise ParseError(f"component {comp} out of range", lineno)
            if slot in slots[comp - 1]:
                raise ParseError(f"slot {field} used twice", lineno)
            slots[comp - 1][slot] = (aid, role)
        signs[aid] = 1 if fields[2] == "+" else -1
    strands = tuple(tuple(v for _, v in sorted(comp.items())) for comp in slots)
    return WArrowPresentation(strands, tuple(sorted(signs.items())), base.kind)


def serialize_presentation(p):
    lines = ["arrows"]
    if p.kind == STRING_LINK:
        lines.append("stringlink")
    lines.extend("component:" for _ in range(p.mu))
    where = {}
    for ci, strand in enumerate(p.strands):
        for slot, (aid, role) in enumerate(strand, start=1):
            where[(aid, role)] = f"{ci + 1}.{slot}"
    for aid in p.arrow_ids():
        sign = "+" if p.sign_map[aid] > 0 else "-"
        lines.append(f"arrow: {where[(aid, TAIL)]} {where[(aid, HEAD)]} {sign}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# arrow moves

@dataclass(frozen=True, order=True)
class ArrowMoveKind:
    name: str
    n: int = 0
    direction: str = ""


def make_arrow_kind(name, n=None, direction=None):
    name = name.lower()
    if name not in ARROW_MOVE_NAMES:
        raise MoveError(f"unknown arrow move {name!r}")
    if name in _PARAMETRIC_MOVES:
        if n is None or n < 1:
            raise MoveError(f"{name} needs n >= 1")
        if name == "abar(n)" and n % 2 == 0:
            raise MoveError("abar(n) is defined for odd n only")
    else:
        n = 0
    return ArrowMoveKind(name, n, direction or "")


@dataclass(frozen=True, order=True)
class ArrowSite:
    data: tuple


def _strand_adjacent(p, ci):
    strand = p.strands[ci]
    n = len(strand)
    if n < 2:
        return []
    if p.kind == STRING_LINK:
        return [(q, q + 1) for q in range(n - 1)]
    if n == 2:
        return [(0, 1)]
    return [(q, (q + 1) % n) for q in range(n)]


def _strand_gaps(p, ci):
    n = len(p.strands[ci])
    if p.kind == STRING_LINK:
        return list(range(n + 1))
    return list(range(n)) if n else [0]


def find_arrow_sites(p, kind):
    """Applicable sites of an arrow move, sorted."""
    name = kind.name
    if name in _NOOP_MOVES:
        return [ArrowSite(())]
    if name in ("heads-exchange", "h", "hprime"):
        return sorted(_token_swap_sites(p, HEAD, HEAD))
    if name == "ar7":
        return sorted(_token_swap_sites(p, TAIL, TAIL))
    if name == "head-tail-exchange":
        return sorted(_token_swap_sites(p, TAIL, HEAD) + _token_swap_sites(p, HEAD, TAIL))
    if name == "ends-exchange":
        return sorted(set(_token_swap_sites(p, TAIL, TAIL))
                      | set(_token_swap_sites(p, HEAD, HEAD))
                      | set(_token_swap_sites(p, TAIL, HEAD))
                      | set(_token_swap_sites(p, HEAD, TAIL)))
    if name == "head-tail-reversal":
        return [ArrowSite((aid,)) for aid in p.arrow_ids()]
    if name in ("ar8", "ar10"):
        order = (TAIL, HEAD) if name == "ar8" else (HEAD, TAIL)
        if kind.direction == EXPAND:
            return sorted(ArrowSite((ci, g, s))
                          for ci in range(p.mu) for g in _strand_gaps(p, ci)
                          for s in (1, -1))
        out = []
        for ci in range(p.mu):
            strand = p.strands[ci]
            for q, r in _strand_adjacent(p, ci):
                if (strand[q][0] == strand[r][0]
                        and (strand[q][1], strand[r][1]) == order):
                    out.append(ArrowSite((ci, q)))
        return sorted(out)
    if name == "ar9":
        if kind.direction == EXPAND:
            return sorted(_pair_gap_sites(p, extra=[(1, True), (1, False),
                                                    (-1, True), (-1, False)]))
        return sorted(_ar9_reduce_sites(p))
    if name in ("a^n", "abar^n"):
        rev = name == "abar^n"
        if kind.direction == EXPAND:
            return sorted(_pair_gap_sites(p, extra=[(1,), (-1,)]))
        return sorted(_block_reduce_sites(p, kind.n, rev))
    if name in ("a(n)", "abar(n)"):
        rev = name == "abar(n)"
        if name == "a(n)" and kind.n % 2 == 0 and p.kind == STRING_LINK:
            return []
        if kind.direction == EXPAND:
            return sorted(_pair_gap_sites(p, extra=[(1, 1), (1, 2), (-1, 1), (-1, 2)]))
        return sorted(_twist_reduce_sites(p, kind.n, rev))
    raise MoveError(f"move {name} needs a direction")


def _token_swap_sites(p, first, second):
    out = []
    for ci in range(p.mu):
        strand = p.strands[ci]
        for q, r in _strand_adjacent(p, ci):
            if (strand[q][1] == first and strand[r][1] == second
                    and strand[q][0] != strand[r][0]):
                out.append(ArrowSite((ci, q)))
    return out


def _pair_gap_sites(p, extra):
    out = []
    gaps = [(ci, g) for ci in range(p.mu) for g in _strand_gaps(p, ci)]
    for (c1, g1), (c2, g2) in itertools.product(gaps, repeat=2):
        for variant in extra:
            out.append(ArrowSite((c1, g1, c2, g2) + tuple(variant)))
    return out


def _ar9_reduce_sites(p):
    out = []
    sm = p.sign_map
    heads = {}
    for ci in range(p.mu):
        strand = p.strands[ci]
        for q, r in _strand_adjacent(p, ci):
            if strand[q][1] == HEAD and strand[r][1] == HEAD:
                heads.setdefault((strand[q][0], strand[r][0]), []).append((ci, q))
    for ci in range(p.mu):
        strand = p.strands[ci]
        for q, r in _strand_adjacent(p, ci):
            if strand[q][1] != TAIL or strand[r][1] != TAIL:
                continue
            a, b = strand[q][0], strand[r][0]
            if a == b or sm[a] != -sm[b]:
                continue
            for parallel, key in ((True, (a, b)), (False, (b, a))):
                for cj, s in heads.get(key, []):
                    out.append(ArrowSite((ci, q, cj, s, parallel)))
    return out


def _block_reduce_sites(p, n, rev):
    out = []
    sm = p.sign_map
    for ci in range(p.mu):
        strand = p.strands[ci]
        for q in range(len(strand)):
            run = _token_run(p, ci, q, n, TAIL)
            if not run:
                continue
            ids = run
            want = list(reversed(ids)) if rev else ids
            if len({sm[a] for a in ids}) != 1:
                continue
            for cj in range(p.mu):
                for r in range(len(p.strands[cj])):
                    hrun = _token_run(p, cj, r, n, HEAD)
                    if hrun == want and not (ci == cj and _runs_overlap(p, ci, q, r, n)):
                        out.append(ArrowSite((ci, q, cj, r)))
    return out


def _twist_reduce_sites(p, n, rev):
    out = []
    sm = p.sign_map
    for ci in range(p.mu):
        strand = p.strands[ci]
        for q in range(len(strand)):
            run = _alt_token_run(p, ci, q, n)
            if not run or run[1][0] != TAIL:
                continue
            ids, roles = run
            if len({sm[a] for a in ids}) != 1:
                continue
            want_ids = list(reversed(ids)) if rev else ids
            expect = [HEAD if ro == TAIL else TAIL
                      for ro in (reversed(roles) if rev else roles)]
            for cj in range(p.mu):
                for r in range(len(p.strands[cj])):
                    other = _alt_token_run(p, cj, r, n)
                    if (other and other[0] == want_ids and other[1] == expect
                            and not (ci == cj and _runs_overlap(p, ci, q, r, n))):
                        out.append(ArrowSite((ci, q, cj, r)))
    return out


def _token_run(p, ci, start, n, role):
    strand = p.strands[ci]
    ln = len(strand)
    positions = _run_positions(p, ci, start, n)
    if positions is None:
        return None
    ids = []
    for pos in positions:
        aid, r = strand[pos]
        if r != role:
            return None
        ids.append(aid)
    return ids


def _alt_token_run(p, ci, start, n):
    strand = p.strands[ci]
    positions = _run_positions(p, ci, start, n)
    if positions is None:
        return None
    first = strand[positions[0]][1]
    ids, roles = [], []
    for k, pos in enumerate(positions):
        aid, r = strand[pos]
        want = first if k % 2 == 0 else (HEAD if first == TAIL else TAIL)
        if r != want:
            return None
        ids.append(aid)
        roles.append(r)
    return ids, roles


def _run_positions(p, ci, start, n):
    ln = len(p.strands[ci])
    if p.kind == STRING_LINK:
        if start + n > ln:
            return None
        return list(range(start, start + n))
    if n > ln:
        return None
    out = [(start + i) % ln for i in range(n)]
    return out if len(set(out)) == n else None


def _runs_overlap(p, ci, q, r, n):
    a = set(_run_positions(p, ci, q, n) or [])
    b = set(_run_positions(p, ci, r, n) or [])
    return bool(a & b)


def apply_arrow_move(p, kind, site):
    """Apply an arrow move; surgery images stay welded-equivalent for
    AR1-AR10, and shift ordered linking data by the documented deltas for
    the A-family."""
    name = kind.name
    data = site.data
    if name in _NOOP_MOVES:
        return p
    if name in ("heads-exchange", "h", "hprime", "ar7", "head-tail-exchange",
                "ends-exchange"):
        return _swap_tokens(p, data)
    if name == "head-tail-reversal":
        (aid,) = data
        strands = tuple(tuple((a, (HEAD if ro == TAIL else TAIL) if a == aid else ro)
                              for a, ro in strand)
                        for strand in p.strands)
        return WArrowPresentation(strands, p.signs, p.kind)
    if name in ("ar8", "ar10"):
        if kind.direction == EXPAND:
            ci, g, s = data
            aid = p.fresh_arrow_id()
            order = (TAIL, HEAD) if name == "ar8" else (HEAD, TAIL)
            block = [(aid, order[0]), (aid, order[1])]
            return _insert_tokens(p, [(ci, g, block)], {aid: s})
        ci, q = data
        strand = p.strands[ci]
        r = _next(p, ci, q)
        if strand[q][0] != strand[r][0]:
            raise MoveError("site is not an isolated arrow")
        return _delete_arrows(p, [strand[q][0]])
    if name == "ar9":
        if kind.direction == EXPAND:
            c1, g1, c2, g2, sign, parallel = data
            a = p.fresh_arrow_id()
            tails = [(a, TAIL), (a + 1, TAIL)]
            heads = [(a, HEAD), (a + 1, HEAD)] if parallel else [(a + 1, HEAD), (a, HEAD)]
            return _insert_tokens(p, [(c1, g1, tails), (c2, g2, heads)],
                                  {a: sign, a + 1: -sign})
        ci, q, cj, s, parallel = data
        ta, tb = p.strands[ci][q], p.strands[ci][_next(p, ci, q)]
        ha, hb = p.strands[cj][s], p.strands[cj][_next(p, cj, s)]
        a, b = ta[0], tb[0]
        want = (a, b) if parallel else (b, a)
        ok = (ta[1] == tb[1] == TAIL and ha[1] == hb[1] == HEAD
              and (ha[0], hb[0]) == want and a != b
              and p.sign_map[a] == -p.sign_map[b])
        if not ok:
            raise MoveError("site is not a cancelling arrow pair")
        return _delete_arrows(p, [a, b])
    if name in ("a^n", "abar^n"):
        rev = name == "abar^n"
        if kind.direction == EXPAND:
            c1, g1, c2, g2, sign = data
            base = p.fresh_arrow_id()
            ids = list(range(base, base + kind.n))
            tails = [(a, TAIL) for a in ids]
            heads = [(a, HEAD) for a in (reversed(ids) if rev else ids)]
            return _insert_tokens(p, [(c1, g1, tails), (c2, g2, heads)],
                                  {a: sign for a in ids})
        ci, q, cj, r = data
        ids = _token_run(p, ci, q, kind.n, TAIL)
        if not ids:
            raise MoveError("no arrow block at site")
        return _delete_arrows(p, ids)
    if name in ("a(n)", "abar(n)"):
        return _apply_a_twist(p, kind, site, rev=(name == "abar(n)"))
    raise MoveError(f"cannot apply arrow move {name}")


def _apply_a_twist(p, kind, site, rev):
    n = kind.n
    if kind.direction == EXPAND:
        c1, g1, c2, g2, sign, first_tail = site.data
        base = p.fresh_arrow_id()
        ids = list(range(base, base + n))
        b1, b2 = [], []
        for k in range(n):
            r1 = TAIL if (k % 2 == 0) == (first_tail == 1) else HEAD
            b1.append((ids[k], r1))
            b2.append((ids[k], HEAD if r1 == TAIL else TAIL))
        if rev:
            b2 = list(reversed(b2))
        signs = {a: sign for a in ids}
        if n % 2 == 1 or rev:
            return _insert_tokens(p, [(c1, g1, b1), (c2, g2, b2)], signs)
        if p.kind == STRING_LINK:
            raise MoveError("even twist moves splice strands; links only")
        return _splice_tokens(p, (c1, g1), (c2, g2), b1, b2, signs)
    ci, q, cj, r = site.data
    run = _alt_token_run(p, ci, q, n)
    if not run:
        raise MoveError("no twist block at site")
    ids = run[0]
    if n % 2 == 1 or rev:
        return _delete_arrows(p, ids)
    if p.kind == STRING_LINK:
        raise MoveError("even twist moves splice strands; links only")
    return _delete_arrows_and_splice(p, ids, (ci, q), (cj, r), n)


def _next(p, ci, q):
    strand = p.strands[ci]
    if p.kind == STRING_LINK:
        if q + 1 >= len(strand):
            raise MoveError("adjacency runs off a strand end")
        return q + 1
    return (q + 1) % len(strand)


def _swap_tokens(p, data):
    ci, q = data
    r = _next(p, ci, q)
    strands = [list(s) for s in p.strands]
    strands[ci][q], strands[ci][r] = strands[ci][r], strands[ci][q]
    return WArrowPresentation(tuple(tuple(s) for s in strands), p.signs, p.kind)


def _insert_tokens(p, inserts, new_signs):
    strands = [list(s) for s in p.strands]
    by_comp = {}
    for ci, g, block in inserts:
        by_comp.setdefault(ci, {}).setdefault(g, []).extend(block)
    for ci, items in by_comp.items():
        for g in sorted(items, reverse=True):
            strands[ci][g:g] = items[g]
    signs = dict(p.signs)
    signs.update(new_signs)
    return WArrowPresentation(tuple(tuple(s) for s in strands),
                              tuple(sorted(signs.items())), p.kind)


def _delete_arrows(p, ids):
    drop = set(ids)
    strands = tuple(tuple(tok for tok in strand if tok[0] not in drop)
                    for strand in p.strands)
    signs = tuple((a, s) for a, s in p.signs if a not in drop)
    return WArrowPresentation(strands, signs, p.kind)


def _splice_tokens(p, gap_a, gap_b, block_a, block_b, new_signs):
    (ca, ga), (cb, gb) = gap_a, gap_b
    strands = [list(s) for s in p.strands]
    signs = dict(p.signs)
    signs.update(new_signs)
    if ca != cb:
        sa, sb = strands[ca], strands[cb]
        wa = sa[ga:] + sa[:ga]
        wb = sb[gb:] + sb[:gb]
        merged = list(block_a) + wb + list(block_b) + wa
        lo, hi = min(ca, cb), max(ca, cb)
        strands[lo] = merged
        del strands[hi]
    else:
        s = strands[ca]
        if ga <= gb:
            x, y = s[ga:gb], s[gb:] + s[:ga]
        else:
            x, y = s[ga:] + s[:gb], s[gb:ga]
        strands[ca] = y + list(block_a)
        strands.insert(ca + 1, x + list(block_b))
    return WArrowPresentation(tuple(tuple(s) for s in strands),
                              tuple(sorted(signs.items())), p.kind)


def _delete_arrows_and_splice(p, ids, run_a, run_b, n):
    (ca, qa), (cb, qb) = run_a, run_b
    drop = set(ids)
    strands = [list(s) for s in p.strands]
    signs = {a: s for a, s in p.signs if a not in drop}
    if ca != cb:
        la, lb = len(strands[ca]), len(strands[cb])
        wa = [strands[ca][(qa + n + i) % la] for i in range(la - n)]
        wb = [strands[cb][(qb + n + i) % lb] for i in range(lb - n)]
        lo, hi = min(ca, cb), max(ca, cb)
        strands[lo] = wb + wa
        del strands[hi]
    else:
        s = strands[ca]
        ln = len(s)
        idx2 = {(qb + i) % ln for i in range(n)}
        walk, b_index = [], None
        pos = (qa + n) % ln
        while pos != qa:
            if pos == qb:
                b_index = len(walk)
            if pos not in idx2:
                walk.append(s[pos])
            pos = (pos + 1) % ln
        if b_index is None:
            b_index = len(walk)
        strands[ca] = walk[b_index:]
        strands.insert(ca + 1, walk[:b_index])
    return WArrowPresentation(tuple(tuple(s) for s in strands),
                              tuple(sorted(signs.items())), p.kind)


# ---------------------------------------------------------------------------
# normal forms

def normalize_vn(p, n):
    """Twist normal-form parameters for odd n.

    Returns {(i, j): a_ij} with 0 <= a_ij < n for 1 <= i < j <= mu, where
    a_ij is the mod-n reduction of lambda_ij + lambda_ji of the closure; the
    stacked H_ij(a_ij) presentations realize the normal form.
    """
    if n < 1 or n % 2 == 0:
        raise DiagramError("normalize_vn needs odd n >= 1")
    if p.kind != STRING_LINK:
        raise DiagramError("normalize_vn expects a string-link presentation")
    from .diagram import closure, linking_matrix
    lam = linking_matrix(closure(surgery(p)))
    out = {}
    for i in range(1, p.mu + 1):
        for j in range(i + 1, p.mu + 1):
            out[(i, j)] = (lam[i - 1][j - 1] + lam[j - 1][i - 1]) % n
    return out


def normalize_vn_uc(p, n):
    """Parallel normal-form parameters: ({(i,j): a_ij}, {(i,j): b_ij}) with
    a_ij = lambda_ij mod n and b_ij = lambda_ji mod n for i < j."""
    if n < 1:
        raise DiagramError("normalize_vn_uc needs n >= 1")
    if p.kind != STRING_LINK:
        raise DiagramError("normalize_vn_uc expects a string-link presentation")
    from .diagram import closure, linking_matrix
    lam = linking_matrix(closure(surgery(p)))
    a_mat, b_mat = {}, {}
    for i in range(1, p.mu + 1):
        for j in range(i + 1, p.mu + 1):
            a_mat[(i, j)] = lam[i - 1][j - 1] % n
            b_mat[(i, j)] = lam[j - 1][i - 1] % n
    return a_mat, b_mat
