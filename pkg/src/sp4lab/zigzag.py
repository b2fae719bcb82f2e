"""Weyl-chamber combinatorics: move legality, path planning, bound ledger.

Cells live in the dominant cone {i >= j >= 0}.  A path is a chain of
elementary moves, each licensed by one of the move lemmas at an anchor
cell: the (0,1) and (0,2) moves anchor at their lower cell, the (1,-1)
move anchors at the cell with the smaller first coordinate (so it may
be traversed in either direction).  The planner follows the reference
route: climb into the strip 0 <= i - 2j <= 3, slide to the diagonal
i = 2j inside the wider strip, then append one composite diagonal step;
the bound ledger turns each move into an exponential decay term and
compares the summed path weight, plus the closed-form geometric tail,
against the claimed aggregate decay.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

UP1 = (0, 1)
RIGHT = (1, -1)
UP2 = (0, 2)

CHAR_NE2 = "char-ne2"
CHAR_2 = "char-2"


class PlannerError(ValueError):
    """No legal move sequence exists from the requested start cell."""

    def __init__(self, cell, hypothesis):
        self.cell = cell
        self.hypothesis = hypothesis
        super().__init__(f"blocked at {cell}: {hypothesis}")


@dataclass(frozen=True)
class Regime:
    """Move-legality context: characteristic branch, valuation of 2, level."""

    kind: str
    v0: int = 0
    k: int = 0

    def __post_init__(self):
        if self.kind not in (CHAR_NE2, CHAR_2):
            raise ValueError(f"unknown regime kind {self.kind!r}")
        if self.kind == CHAR_2 and self.v0 != 0:
            raise ValueError("v0 plays no role in characteristic 2")
        if self.k < 0:
            raise ValueError("congruence level must be >= 0")

    def up_delta(self):
        return UP2 if self.kind == CHAR_2 else UP1

    def up_threshold(self):
        """Minimal i - j at the anchor for the vertical move."""
        if self.kind == CHAR_2:
            return 2 if self.k == 0 else 4 * self.k + 2
        return self.v0 + 1 if self.k == 0 else 2 * self.k + self.v0

    def right_threshold(self):
        """Minimal j at the anchor for the (1,-1) move."""
        return 2 if self.k == 0 else 2 * self.k + 2


@dataclass(frozen=True)
class Move:
    delta: tuple
    anchor: tuple
    reversed_: bool = False

    def lemma(self, regime):
        if self.delta == UP1:
            return "SPHER01" if regime.k == 0 else "NONSPHER01"
        if self.delta == UP2:
            return "CHAR2_02"
        return "SPHER1M1" if regime.k == 0 else "NONSPHER1M1"


@dataclass
class ZigzagPath:
    start: tuple
    regime: Regime
    cells: list
    moves: list
    approach_len: int = 0
    template_trace: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def end(self):
        return self.cells[-1]

    def diagonal_cell(self):
        """Last cell before the appended diagonal composite step."""
        idx = len(self.cells) - 1 - self.notes.get("tail_moves", 0)
        return self.cells[idx]


def in_cone(cell):
    i, j = cell
    return i >= j >= 0


def move_legal(regime, src, delta, reversed_=False):
    """(ok, anchor, reason); legality is judged at the move's anchor cell."""
    i, j = src
    if delta in (UP1, UP2):
        anchor = (i, j - delta[1]) if reversed_ else src
        if delta == UP1 and regime.kind == CHAR_2:
            return False, anchor, "(0,1) moves need characteristic != 2"
        if delta == UP2 and regime.kind != CHAR_2:
            return False, anchor, "(0,2) moves need characteristic 2"
        ai, aj = anchor
        need = regime.up_threshold()
        if ai - aj < need:
            return False, anchor, f"i-j = {ai - aj} < {need}"
        return True, anchor, ""
    if delta == RIGHT:
        anchor = src if not reversed_ else (i - 1, j + 1)
        ai, aj = anchor
        need = regime.right_threshold()
        if aj < need:
            return False, anchor, f"j = {aj} < {need}"
        if regime.k == 0 and ai < aj:
            return False, anchor, f"anchor ({ai},{aj}) outside the dominant cone"
        if regime.k > 0 and ai < aj - 1:
            return False, anchor, f"anchor i = {ai} below the admitted boundary j-1"
        return True, anchor, ""
    raise ValueError(f"unknown move delta {delta!r}")


def apply_move(cell, delta, reversed_=False):
    i, j = cell
    if reversed_:
        return (i - delta[0], j - delta[1])
    return (i + delta[0], j + delta[1])


class _Builder:
    def __init__(self, start, regime):
        self.regime = regime
        self.cells = [start]
        self.moves = []

    @property
    def cur(self):
        return self.cells[-1]

    def push(self, delta, reversed_=False):
        ok, anchor, reason = move_legal(self.regime, self.cur, delta, reversed_)
        if not ok:
            raise PlannerError(self.cur, reason)
        nxt = apply_move(self.cur, delta, reversed_)
        if not in_cone(nxt):
            raise PlannerError(self.cur, f"target {nxt} leaves the dominant cone")
        self.moves.append(Move(delta, anchor, reversed_))
        self.cells.append(nxt)

    def push_many(self, steps):
        for delta, rev in steps:
            self.push(delta, rev)


def _neighbors(regime, cell):
    """All legally reachable neighbor cells with their move descriptors."""
    out = []
    deltas = ((regime.up_delta(), False), (regime.up_delta(), True),
              (RIGHT, False), (RIGHT, True))
    for delta, rev in deltas:
        ok, _, _ = move_legal(regime, cell, delta, rev)
        if not ok:
            continue
        nxt = apply_move(cell, delta, rev)
        if in_cone(nxt):
            out.append((nxt, (delta, rev)))
    return out


def _bfs_route(regime, start, goal_pred, i_limit):
    """Shortest legal move sequence from start to a goal cell, or None."""
    from collections import deque

    seen = {start: None}
    queue = deque([start])
    while queue:
        cell = queue.popleft()
        if goal_pred(cell):
            steps = []
            cur = cell
            while seen[cur] is not None:
                prev, mv = seen[cur]
                steps.append(mv)
                cur = prev
            return list(reversed(steps))
        for nxt, mv in _neighbors(regime, cell):
            if nxt[0] > i_limit or nxt in seen:
                continue
            seen[nxt] = (cell, mv)
            queue.append(nxt)
    return None


def _climb_to_strip(b):
    """Approach phase: reach the strip 0 <= i - 2j <= 3 (<= 4 in char 2)."""
    regime = b.regime
    i, j = b.cur
    if 2 * j > i:
        steps = -((i - 2 * j) // 3)  # ceil((2j - i)/3)
        for _ in range(steps):
            b.push(RIGHT)
    elif regime.kind == CHAR_2:
        while b.cur[0] - 2 * b.cur[1] > 4:
            b.push(UP2)
    else:
        target = i // 2
        while b.cur[1] < target:
            b.push(UP1)


def _slide_to_diagonal_ne2(b):
    i, j = b.cur
    if i % 2 == 0:
        while b.cur[1] < i // 2:
            b.push(UP1)
        return
    # odd first coordinate: optional climb, one lateral move, then climb;
    # the smallest workable lateral offset is taken and ties are recorded
    choices = []
    for k in (0, 1):
        tgt = (i + 1, j + k - 1)
        if in_cone(tgt) and 0 <= tgt[0] - 2 * tgt[1] <= 4:
            choices.append(k)
    if not choices:
        raise PlannerError(b.cur, "no lateral entry into the wide strip")
    b.both_offsets = len(choices) > 1
    k = choices[0]
    for _ in range(k):
        b.push(UP1)
    b.push(RIGHT)
    while b.cur[1] < (i + 1) // 2:
        b.push(UP1)


CHAR2_CASE_STEPS = {
    1: (((RIGHT, False), (UP2, False)),
        ((UP2, False), (RIGHT, False))),
    2: (((RIGHT, False), (RIGHT, False), (UP2, False), (UP2, False)),
        ((UP2, False), (RIGHT, False), (RIGHT, False), (UP2, False))),
    3: (((RIGHT, True),),),
    4: (((UP2, False),),),
}

CHAR2_CASE_HOPS = {
    1: lambda i, j: [(i, j), (i + 1, j - 1), (i + 1, j + 1)],
    2: lambda i, j: [(i, j), (i + 2, j - 2), (i + 2, j + 2)],
    3: lambda i, j: [(i, j), (i - 1, j + 1)],
    4: lambda i, j: [(i, j), (i, j + 2)],
}


def _slide_to_diagonal_char2(b):
    trace = []
    while True:
        i, j = b.cur
        gap = i - 2 * j
        if gap == 0:
            return trace
        if gap not in CHAR2_CASE_STEPS:
            raise PlannerError(b.cur, f"strip residue {gap} outside the case split")
        variants = CHAR2_CASE_STEPS[gap]
        done = False
        for vi, steps in enumerate(variants):
            if all(_steps_legal(b.regime, b.cur, steps)):
                if vi == 0:
                    trace.append(CHAR2_CASE_HOPS[gap](i, j))
                b.push_many(steps)
                done = True
                break
        if not done:
            raise PlannerError(b.cur, f"no legal case-{gap} template")


def _steps_legal(regime, start, steps):
    cell = start
    for delta, rev in steps:
        ok, _, _ = move_legal(regime, cell, delta, rev)
        nxt = apply_move(cell, delta, rev)
        yield ok and in_cone(nxt)
        cell = nxt


TAIL_NE2 = (((RIGHT, False), (UP1, False), (RIGHT, False), (UP1, False), (UP1, False)),
            ((UP1, False), (RIGHT, False), (UP1, False), (RIGHT, False), (UP1, False)))
TAIL_CHAR2 = (((RIGHT, False), (RIGHT, False), (UP2, False), (RIGHT, False),
               (UP2, False), (RIGHT, False), (UP2, False)),
              ((UP2, False), (RIGHT, False), (RIGHT, False), (UP2, False),
               (RIGHT, False), (UP2, False), (RIGHT, False)))


def _tail_target(regime, diag):
    j = diag[1]
    if regime.kind == CHAR_2:
        return (2 * j + 4, j + 2)
    return (2 * j + 2, j + 1)


def _append_tail(b):
    regime = b.regime
    diag = b.cur
    templates = TAIL_CHAR2 if regime.kind == CHAR_2 else TAIL_NE2
    for steps in templates:
        if all(_steps_legal(regime, diag, steps)):
            b.push_many(steps)
            return len(steps), False
    target = _tail_target(regime, diag)
    route = _bfs_route(regime, diag, lambda c: c == target, target[0] + 4)
    if route is None:
        raise PlannerError(diag, "diagonal step blocked (cell too close to the walls)")
    b.push_many(route)
    return len(route), True


def plan_path(start, regime):
    """Route from start to the diagonal plus one composite diagonal step.

    The reference templates are attempted first; when a hypothesis fails
    near a wall, a bounded breadth-first search supplies a legal detour,
    and only cells with no legal route at all raise PlannerError.
    """
    if not in_cone(start):
        raise ValueError(f"start {start} is not a dominant cell")
    b = _Builder(start, regime)
    bfs_used = False
    trace = []
    try:
        _climb_to_strip(b)
        approach = len(b.moves)
        if regime.kind == CHAR_2:
            trace = _slide_to_diagonal_char2(b)
        else:
            _slide_to_diagonal_ne2(b)
    except PlannerError:
        b = _Builder(start, regime)
        limit = max(2 * start[0] + 8, 16)
        route = _bfs_route(regime, start,
                           lambda c: c[0] == 2 * c[1] and _tail_exists(regime, c),
                           limit)
        if route is None:
            raise
        b.push_many(route)
        approach = len(b.moves)
        bfs_used = True
    diag = b.cur
    if diag[0] != 2 * diag[1]:
        raise PlannerError(diag, "planner failed to reach the diagonal")
    tail, tail_bfs = _append_tail(b)
    path = ZigzagPath(start, regime, b.cells, b.moves, approach_len=approach,
                      template_trace=trace)
    path.notes["tail_moves"] = tail
    path.notes["diagonal"] = list(diag)
    path.notes["bfs_fallback"] = bfs_used or tail_bfs
    if getattr(b, "both_offsets", False):
        path.notes["both_lateral_offsets"] = True
    if regime.kind == CHAR_2:
        parities = {(i + j) % 2 for i, j in b.cells}
        if len(parities) != 1:
            raise PlannerError(start, "parity of i+j drifted along the path")
    validate_path(path)
    return path


def _tail_exists(regime, diag):
    templates = TAIL_CHAR2 if regime.kind == CHAR_2 else TAIL_NE2
    for steps in templates:
        if all(_steps_legal(regime, diag, steps)):
            return True
    target = _tail_target(regime, diag)
    return _bfs_route(regime, diag, lambda c: c == target, target[0] + 4) is not None


def validate_path(path):
    """Independent legality re-check: every move re-evaluated from scratch."""
    regime = path.regime
    for idx, mv in enumerate(path.moves):
        src = path.cells[idx]
        dst = path.cells[idx + 1]
        ok, anchor, reason = move_legal(regime, src, mv.delta, mv.reversed_)
        if not ok:
            raise AssertionError(f"illegal move {mv} at {src}: {reason}")
        if anchor != mv.anchor:
            raise AssertionError(f"anchor mismatch at {src}")
        if apply_move(src, mv.delta, mv.reversed_) != dst:
            raise AssertionError(f"cell chain broken at {src}")
        if not in_cone(dst):
            raise AssertionError(f"cell {dst} outside the dominant cone")
    return True


# ---------------------------------------------------------------------------
# bound ledger


class InadmissibleRateError(ValueError):
    pass


def _check_rates(regime, alpha, h, beta):
    if alpha <= 0:
        raise InadmissibleRateError("alpha must be positive")
    if h < 1:
        raise InadmissibleRateError("h must be a positive integer")
    limit = Fraction(alpha) / (4 * h) if regime.kind == CHAR_2 else Fraction(alpha) / (2 * h)
    if not 0 <= beta < limit:
        side = "alpha/(4h)" if regime.kind == CHAR_2 else "alpha/(2h)"
        raise InadmissibleRateError(f"beta must lie in [0, {side}) = [0, {limit})")


def move_exponent(move, alpha, h, beta, c):
    """Exact exponent of the decay term contributed by one move."""
    i, j = move.anchor
    a, hh, b, cc = map(Fraction, (alpha, h, beta, c))
    if move.delta == UP1:
        return 2 * cc - (2 * a / hh - 2 * b) * i + (2 * a / hh) * j
    if move.delta == UP2:
        return 2 * cc - (a / hh - 2 * b) * i + (a / hh) * j
    return 2 * cc + b * i - (2 * a / hh - b) * j


def decay_rate(regime, alpha, h, beta):
    """The surfaced aggregate rate: alpha/h - 2 beta, halved in char 2."""
    a, hh, b = map(Fraction, (alpha, h, beta))
    if regime.kind == CHAR_2:
        return a / (2 * hh) - 2 * b
    return a / hh - 2 * b


def bound_ledger(path, alpha, h, beta, c=0):
    """Sum the per-move decay terms plus the geometric diagonal tail and
    compare with the claimed closed form.

    alpha, h, beta, c may be ints, Fractions, or decimal strings; the
    exponents are computed in exact rational arithmetic and only the
    final exponentials are floating point.  Returns the ledger rows, the
    total, the closed form exp(2c - rate * i_start) and the implied
    constant total / closed_form.
    """
    alpha = Fraction(alpha) if not isinstance(alpha, Fraction) else alpha
    beta = Fraction(beta) if not isinstance(beta, Fraction) else beta
    c = Fraction(c) if not isinstance(c, Fraction) else c
    regime = path.regime
    _check_rates(regime, alpha, h, beta)
    rows = []
    total = 0.0
    for mv in path.moves:
        expo = move_exponent(mv, alpha, h, beta, c)
        val = math.exp(float(expo))
        rows.append({"anchor": list(mv.anchor),
                     "delta": list(mv.delta),
                     "lemma": mv.lemma(regime),
                     "exponent": str(expo),
                     "value": val})
    total = sum(r["value"] for r in rows)
    jd = path.diagonal_cell()[1]
    rate = decay_rate(regime, alpha, h, beta)
    if regime.kind == CHAR_2:
        # composite steps (2j,j) -> (2j+4,j+2): terms exp(2c - 2 rate (j+2t))
        step = math.exp(float(-4 * rate))
        first = math.exp(float(2 * c - 2 * rate * (jd + 2)))
    else:
        # composite steps (2j,j) -> (2j+2,j+1): terms exp(2c - 2 rate (j+t))
        step = math.exp(float(-2 * rate))
        first = math.exp(float(2 * c - 2 * rate * (jd + 1)))
    tail = first / (1.0 - step)
    closed = math.exp(float(2 * c - rate * path.start[0]))
    total_with_tail = total + tail
    return {
        "rows": rows,
        "path_total": total,
        "tail_sum": tail,
        "total": total_with_tail,
        "closed_form": closed,
        "implied_constant": total_with_tail / closed,
        "rate": rate,
    }


def ledger_sweep(regime, alpha, h, beta, c=0, max_length=300, stride=7):
    """Sup of the implied constant over a grid of start cells."""
    sup = 0.0
    worst = None
    for i in range(2, max_length + 1, 1):
        for j in range(0, i + 1, max(1, stride)):
            if i + j > max_length:
                break
            try:
                path = plan_path((i, j), regime)
            except PlannerError:
                continue
            res = bound_ledger(path, alpha, h, beta, c)
            if res["implied_constant"] > sup:
                sup = res["implied_constant"]
                worst = (i, j)
    return {"sup_constant": sup, "worst_start": worst,
            "rate": str(decay_rate(regime, Fraction(alpha), h, Fraction(beta)))}
