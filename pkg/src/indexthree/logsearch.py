"""Backtracking completion of partial circuit logs.

The three logs of an index 3 current graph over Z_n are cyclic
successor maps ``succ[c]`` on the nonzero group elements plus the vortex
letters.  A current graph exists exactly when

* ``succ[c][a] = b`` (numbers) forces ``succ[c+a][b-a] = -a``,
* ``succ[c][a] = X`` (letter) forces ``succ[c+a][X] = -a``,
* each vortex is entered with currents of one nonzero residue class mod 3
  whose sum generates the multiples of 3,
* every ``succ[c]`` is a single cycle through all symbols.

:class:`LogCompletion` keeps a partial assignment with an undo trail and
fills it in by depth-first search with forward checking.  Fixing part of
the logs in advance (say, from a stretch of Bose ladder) and letting the
search complete the rest is how the fixed portions of the families were
found.
"""

from __future__ import annotations

import math
from typing import Dict, Iterable, List, Optional, Sequence, Tuple


class SearchBudgetExceeded(Exception):
    pass


class LogCompletion:
    def __init__(self, modulus: int, letters: Sequence[str] = (), allow_pendants: bool = False,
                 forbid: Iterable[Tuple[int, object, object]] = ()):
        self.n = modulus
        self.letters = list(letters)
        self.symbols = list(range(1, modulus)) + self.letters
        self.size = len(self.symbols)
        self.allow_pendants = allow_pendants
        self.succ: List[Dict[object, object]] = [{}, {}, {}]
        self.pred: List[Dict[object, object]] = [{}, {}, {}]
        self.trail: List[Tuple[int, object, object]] = []
        self.forbidden = set(forbid)
        self.nodes = 0

    # -- assignment with propagation ----------------------------------------

    def _forced(self, c, x, y):
        n = self.n
        xs, ys = isinstance(x, str), isinstance(y, str)
        if xs and ys:
            return None
        if not xs and not ys:
            b = (y - x) % n
            if b == 0:
                return None
            return ((c + x) % 3, b, (-x) % n)
        if ys:
            return ((c + x) % 3, y, (-x) % n)
        return ((c + y) % 3, (-y) % n, x)

    def _vortex_ok(self, c, p, X):
        if p % 3 == 0:
            return False
        for c2 in range(3):
            q = self.pred[c2].get(X)
            if q is not None and c2 != c and (q - p) % 3:
                return False
        return True

    def _closes_early(self, c, x, y):
        succ = self.succ[c]
        cur, steps = y, 1
        while cur in succ:
            cur = succ[cur]
            steps += 1
            if cur == x:
                return steps != self.size
            if steps > self.size:
                return True
        return False

    def assign(self, c: int, x, y) -> bool:
        """Set ``succ[c][x] = y`` and everything it forces; False on conflict.

        On failure the partial changes stay on the trail; callers undo to a
        mark taken beforehand.
        """
        queue = [(c, x, y)]
        while queue:
            c, x, y = queue.pop()
            s = self.succ[c].get(x)
            if s is not None:
                if s != y:
                    return False
                continue
            if x == y or y in self.pred[c] or (c, x, y) in self.forbidden:
                return False
            if isinstance(y, str) and not isinstance(x, str) and not self._vortex_ok(c, x, y):
                return False
            if not self.allow_pendants and not isinstance(x, str) and not isinstance(y, str):
                n = self.n
                if (2 * x - y) % n == 0 and (3 * x) % n == 0:
                    return False
            if self._closes_early(c, x, y):
                return False
            self.succ[c][x] = y
            self.pred[c][y] = x
            self.trail.append((c, x, y))
            f = self._forced(c, x, y)
            if f is None:
                return False
            queue.append(f)
        return True

    def assign_sequence(self, c: int, seq: Sequence[object], cyclic: bool = False) -> bool:
        pairs = list(zip(seq, seq[1:]))
        if cyclic:
            pairs.append((seq[-1], seq[0]))
        return all(self.assign(c, x, y) for x, y in pairs)

    def mark(self) -> int:
        return len(self.trail)

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            c, x, y = self.trail.pop()
            del self.succ[c][x]
            del self.pred[c][y]

    # -- completion ----------------------------------------------------------

    def complete(self) -> bool:
        return all(len(s) == self.size for s in self.succ) and self.vortices_ok()

    def vortices_ok(self) -> bool:
        for X in self.letters:
            ps = [self.pred[c].get(X) for c in range(3)]
            if None in ps:
                return False
            if len({p % 3 for p in ps}) != 1 or math.gcd(sum(ps) % self.n, self.n) != 3:
                return False
        return True

    def logs(self) -> List[List[object]]:
        out = []
        for c in range(3):
            start = 1
            seq = [start]
            cur = self.succ[c][start]
            while cur != start:
                seq.append(cur)
                cur = self.succ[c][cur]
            out.append(seq)
        return out

    def _candidates_succ(self, c, x):
        out = []
        for y in self.symbols:
            if y in self.pred[c] or y == x:
                continue
            out.append(y)
        return out

    def _choose(self):
        """Open slot with the fewest surviving candidates (full forward check)."""
        best = None
        for c in range(3):
            succ = self.succ[c]
            for x in self.symbols:
                if x in succ:
                    continue
                alive = []
                for y in self._candidates_succ(c, x):
                    m = self.mark()
                    ok = self.assign(c, x, y)
                    self.undo(m)
                    if ok:
                        alive.append(y)
                        if best is not None and len(alive) >= len(best[2]):
                            break
                if best is None or len(alive) < len(best[2]):
                    best = (c, x, alive)
                    if len(alive) <= 1:
                        return best
        return best

    def solutions(self, budget: Optional[int] = None, limit: Optional[int] = None, rng=None):
        """Yield completed log triples.

        The order is deterministic unless ``rng`` (a ``random.Random``) is
        given, in which case candidates are tried in shuffled order; short
        randomized runs with restarts often beat one long deterministic run.
        """
        found = 0
        stack_depth = 0

        def rec():
            nonlocal found
            if budget is not None and self.nodes >= budget:
                raise SearchBudgetExceeded
            self.nodes += 1
            choice = self._choose()
            if choice is None:
                if self.vortices_ok():
                    found += 1
                    yield self.logs()
                return
            c, x, alive = choice
            if rng is not None:
                alive = list(alive)
                rng.shuffle(alive)
            for y in alive:
                m = self.mark()
                if self.assign(c, x, y):
                    yield from rec()
                    if limit is not None and found >= limit:
                        self.undo(m)
                        return
                self.undo(m)

        yield from rec()
