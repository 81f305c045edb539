"""Fully dynamic upper envelope of named lines.

Classical point-line duality: the line y = slope*d + intercept becomes the
dual point (slope, intercept), and the line attaining the envelope maximum at
abscissa d is a vertex of the *upper convex hull* of the dual points.  The
structure is the Overmars-van-Leeuwen style merge tree: a balanced skeleton
tree keyed by (slope, name) whose every node stores the upper hull of its
subtree's dual points, rebuilt bottom-up by merging child hulls across their
bridge.  Hull chains are immutable balanced trees (path-copied on change), so
a parent hull can share child-hull structure and a node whose inputs did not
change keeps its hull object as-is.

All geometric predicates are exact: each dual point carries homogeneous
integer coordinates (X, Y, W) with X/W = slope, Y/W = intercept, W > 0, and
orientation/value tests are integer cross-multiplications.  `work` counts
structural steps (node visits and chain-node creations) so tests can check
the O(log^2 n) worst-case growth claim without wall clocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = ["Line", "UpperEnvelope"]


@dataclass(frozen=True)
class Line:
    """A named line d -> slope*d + intercept; at most one line per name."""

    name: int
    slope: Fraction
    intercept: Fraction

    def __post_init__(self):
        if type(self.slope) is not Fraction:
            object.__setattr__(self, "slope", Fraction(self.slope))
        if type(self.intercept) is not Fraction:
            object.__setattr__(self, "intercept", Fraction(self.intercept))

    def value_at(self, d) -> Fraction:
        return self.slope * d + self.intercept


def _dual(line: Line):
    """Homogeneous integer dual point (X, Y, W, line) with W > 0."""
    s, c = line.slope, line.intercept
    w = s.denominator * c.denominator
    return (s.numerator * c.denominator, c.numerator * s.denominator, w, line)


def _orient(p, q, r) -> int:
    """Sign of the cross product (q-p) x (r-p); positive = left turn.

    Exact: the homogeneous form multiplies the affine determinant by
    Wp^2*Wq*Wr > 0, so the sign is unchanged.
    """
    pX, pY, pW = p[0], p[1], p[2]
    return (q[0] * pW - pX * q[2]) * (r[1] * pW - pY * r[2]) - (
        q[1] * pW - pY * q[2]
    ) * (r[0] * pW - pX * r[2])


# Hull chain nodes are plain tuples (point, left, right, height, size,
# first, last); first/last give O(1) access to a subtree's extreme vertices.
_PT, _LT, _RT, _HT, _SZ, _FIRST, _LAST = range(7)


def _sz(t) -> int:
    return t[_SZ] if t is not None else 0


class _SkelNode:
    __slots__ = ("key", "line", "pt", "left", "right", "height", "hull", "hull_src")

    def __init__(self, key, line, pt):
        self.key = key
        self.line = line
        self.pt = pt
        self.left = None
        self.right = None
        self.height = 1
        self.hull = None
        self.hull_src = None


class UpperEnvelope:
    def __init__(self):
        self._root = None
        self._lines = {}
        self.work = 0

    def __len__(self) -> int:
        return len(self._lines)

    def reset_work(self) -> None:
        self.work = 0

    # -- public operations ------------------------------------------------

    def insert(self, line: Line) -> None:
        if line.slope <= 0:
            raise ValueError(f"line slope must be positive, got {line.slope}")
        if line.name in self._lines:
            raise ValueError(f"a line named {line.name} is already stored")
        self._lines[line.name] = line
        self._root = self._skel_insert(self._root, (line.slope, line.name), line, _dual(line))

    def delete(self, name: int) -> None:
        line = self._lines.pop(name, None)
        if line is None:
            raise ValueError(f"no line named {name}")
        self._root = self._skel_delete(self._root, (line.slope, name))

    def lookup(self, name: int) -> Line | None:
        return self._lines.get(name)

    def replace(self, line: Line) -> None:
        """Swap the stored line of this name; equivalent to delete+insert.

        An intercept-only change keeps the skeleton key, so it is a single
        root-to-leaf walk instead of two.
        """
        old = self._lines.get(line.name)
        if old is None:
            raise ValueError(f"no line named {line.name}")
        if old.slope != line.slope:
            self.delete(line.name)
            self.insert(line)
            return
        if old.intercept == line.intercept:
            return
        self._lines[line.name] = line
        self._skel_replace(self._root, line, _dual(line))

    def upper(self, d: int) -> Line:
        """A line attaining max_{stored lines} slope*d + intercept.

        The hull vertex values at fixed d rise then fall going left to right,
        so a single descent comparing each vertex with its successor finds the
        (leftmost) maximum.
        """
        if self._root is None:
            raise ValueError("upper() on an empty envelope")
        node = self._root.hull
        succ = None
        best = None
        while node is not None:
            self.work += 1
            u = node[_PT]
            nxt = node[_RT][_FIRST] if node[_RT] is not None else succ
            if nxt is not None and (nxt[0] * d + nxt[1]) * u[2] > (u[0] * d + u[1]) * nxt[2]:
                node = node[_RT]
            else:
                best = u
                succ = u
                node = node[_LT]
        return best[3]

    # -- skeleton maintenance ----------------------------------------------

    def _skel_insert(self, node, key, line, pt):
        self.work += 1
        if node is None:
            leaf = _SkelNode(key, line, pt)
            self._refresh(leaf)
            return leaf
        if key < node.key:
            node.left = self._skel_insert(node.left, key, line, pt)
        else:
            node.right = self._skel_insert(node.right, key, line, pt)
        return self._rebalance(node)

    def _skel_delete(self, node, key):
        self.work += 1
        if node is None:
            raise ValueError(f"no skeleton entry for {key}")
        if key < node.key:
            node.left = self._skel_delete(node.left, key)
        elif node.key < key:
            node.right = self._skel_delete(node.right, key)
        else:
            if node.left is None:
                return node.right
            if node.right is None:
                return node.left
            succ = node.right
            while succ.left is not None:
                succ = succ.left
            node.key, node.line, node.pt = succ.key, succ.line, succ.pt
            node.right = self._skel_delete(node.right, succ.key)
        return self._rebalance(node)

    def _skel_replace(self, node, line, pt):
        # iterative walk; slope order compared on the homogeneous ints
        x, w, name = pt[0], pt[2], line.name
        path = []
        while True:
            self.work += 1
            assert node is not None, "replace target vanished from the skeleton"
            path.append(node)
            q = node.pt
            c = x * q[2] - q[0] * w
            if c == 0:
                c = name - node.key[1]
            if c == 0:
                node.line = line
                node.pt = pt
                break
            node = node.left if c < 0 else node.right
        for nd in reversed(path):
            self._refresh(nd)

    def _rebalance(self, node):
        lh = node.left.height if node.left is not None else 0
        rh = node.right.height if node.right is not None else 0
        if lh - rh > 1:
            child = node.left
            clh = child.left.height if child.left is not None else 0
            crh = child.right.height if child.right is not None else 0
            if crh > clh:
                node.left = self._skel_rot_left(child)
            node = self._skel_rot_right(node)
        elif rh - lh > 1:
            child = node.right
            clh = child.left.height if child.left is not None else 0
            crh = child.right.height if child.right is not None else 0
            if clh > crh:
                node.right = self._skel_rot_right(child)
            node = self._skel_rot_left(node)
        self._refresh(node)
        return node

    def _skel_rot_left(self, node):
        r = node.right
        node.right = r.left
        r.left = node
        self._refresh(node)
        return r

    def _skel_rot_right(self, node):
        l = node.left
        node.left = l.right
        l.right = node
        self._refresh(node)
        return l

    def _refresh(self, node):
        lh_node = node.left
        rh_node = node.right
        node.height = 1 + max(
            lh_node.height if lh_node is not None else 0,
            rh_node.height if rh_node is not None else 0,
        )
        lh = lh_node.hull if lh_node is not None else None
        rh = rh_node.hull if rh_node is not None else None
        old = node.hull_src
        if old is not None and old[0] is lh and old[2] is rh:
            if old[1] is node.pt:
                return  # identical inputs, hull object still valid
            if self._swap_keeps_hull(node.hull, old[1], node.pt):
                node.hull_src = (lh, node.pt, rh)
                return
        node.hull = self._merge(self._append_pt(lh, node.pt), rh)
        node.hull_src = (lh, node.pt, rh)

    def _swap_keeps_hull(self, hull, old_pt, new_pt):
        """True if swapping old_pt -> new_pt provably leaves the hull as-is:
        the old point was not a hull vertex and the new one lies on or below
        the hull at the same dual x."""
        if hull is None:
            return False
        if old_pt[0] * new_pt[2] != new_pt[0] * old_pt[2]:
            return False  # slope changed; different column entirely
        kind, v1, v2 = self._locate(hull, new_pt)
        if kind == "vertex":
            if v1 is old_pt:
                return False
            return new_pt[1] * v1[2] <= v1[1] * new_pt[2]
        if v1 is None or v2 is None:
            return False  # extreme slope is always a vertex; be conservative
        return _orient(v1, v2, new_pt) <= 0

    def _locate(self, hull, pt):
        """Hull vertex with pt's dual x, or the bracketing vertex pair."""
        x, w = pt[0], pt[2]
        node = hull
        pred = None
        succ = None
        while node is not None:
            self.work += 1
            q = node[_PT]
            lhs = x * q[2]
            rhs = q[0] * w
            if lhs == rhs:
                return "vertex", q, None
            if lhs < rhs:
                succ = q
                node = node[_LT]
            else:
                pred = q
                node = node[_RT]
        return "edge", pred, succ

    # -- persistent hull chains ---------------------------------------------

    def _mk(self, pt, l, r):
        self.work += 1
        if l is None:
            if r is None:
                return (pt, None, None, 1, 1, pt, pt)
            return (pt, None, r, r[3] + 1, r[4] + 1, pt, r[6])
        if r is None:
            return (pt, l, None, l[3] + 1, l[4] + 1, l[5], pt)
        lh = l[3]
        rh = r[3]
        return (pt, l, r, (lh if lh > rh else rh) + 1, l[4] + r[4] + 1, l[5], r[6])

    def _rot_left(self, t):
        r = t[_RT]
        return self._mk(r[_PT], self._mk(t[_PT], t[_LT], r[_LT]), r[_RT])

    def _rot_right(self, t):
        l = t[_LT]
        return self._mk(l[_PT], l[_LT], self._mk(t[_PT], l[_RT], t[_RT]))

    def _join(self, l, pt, r):
        hl = l[3] if l is not None else 0
        hr = r[3] if r is not None else 0
        if hl > hr + 1:
            return self._join_right(l, pt, r)
        if hr > hl + 1:
            return self._join_left(l, pt, r)
        return self._mk(pt, l, r)

    def _join_right(self, l, pt, r):
        ll, lpt, lr = l[_LT], l[_PT], l[_RT]
        hll = ll[3] if ll is not None else 0
        if (lr[3] if lr is not None else 0) <= (r[3] if r is not None else 0) + 1:
            t = self._mk(pt, lr, r)
            if t[3] <= hll + 1:
                return self._mk(lpt, ll, t)
            return self._rot_left(self._mk(lpt, ll, self._rot_right(t)))
        t = self._join_right(lr, pt, r)
        out = self._mk(lpt, ll, t)
        if t[3] <= hll + 1:
            return out
        return self._rot_left(out)

    def _join_left(self, l, pt, r):
        rl, rpt, rr = r[_LT], r[_PT], r[_RT]
        hrr = rr[3] if rr is not None else 0
        if (rl[3] if rl is not None else 0) <= (l[3] if l is not None else 0) + 1:
            t = self._mk(pt, l, rl)
            if t[3] <= hrr + 1:
                return self._mk(rpt, t, rr)
            return self._rot_right(self._mk(rpt, self._rot_left(t), rr))
        t = self._join_left(l, pt, rl)
        out = self._mk(rpt, t, rr)
        if t[3] <= hrr + 1:
            return out
        return self._rot_right(out)

    def _take_prefix(self, t, i):
        """Chain of the first i vertices (the rest is discarded, not built)."""
        if t is None or i <= 0:
            return None
        if i >= t[_SZ]:
            return t
        lt = t[_LT]
        ls = lt[4] if lt is not None else 0
        if i <= ls:
            return self._take_prefix(lt, i)
        return self._join(lt, t[_PT], self._take_prefix(t[_RT], i - ls - 1))

    def _drop_prefix(self, t, j):
        """Chain without the first j vertices."""
        if t is None or j >= t[_SZ]:
            return None
        if j <= 0:
            return t
        lt = t[_LT]
        ls = lt[4] if lt is not None else 0
        if j <= ls:
            return self._join(self._drop_prefix(lt, j), t[_PT], t[_RT])
        return self._drop_prefix(t[_RT], j - ls - 1)

    def _split_last(self, t):
        if t[_RT] is None:
            return t[_LT], t[_PT]
        rest, last = self._split_last(t[_RT])
        return self._join(t[_LT], t[_PT], rest), last

    def _join2(self, a, b):
        if a is None:
            return b
        if b is None:
            return a
        rest, last = self._split_last(a)
        return self._join(rest, last, b)

    # -- hull merging ---------------------------------------------------------

    def _append_pt(self, a, p):
        """Upper hull of a + one point lying at or right of a's last dual x
        (the skeleton is slope-ordered, so a node's point never falls inside
        its left hull's x-range): pop non-convex tail vertices, then join."""
        if a is None:
            return self._mk(p, None, None)
        last = a[_LAST]
        if last[0] * p[2] == p[0] * last[2]:
            if last[1] * p[2] >= p[1] * last[2]:
                return a
            a = self._take_prefix(a, a[_SZ] - 1)
            if a is None:
                return self._mk(p, None, None)
        while a[_SZ] >= 2:
            self.work += 1
            last = a[_LAST]
            sl = self._second_last(a)
            if _orient(sl, last, p) >= 0:
                a = self._take_prefix(a, a[_SZ] - 1)
            else:
                break
        return self._join(a, p, None)

    @staticmethod
    def _second_last(t):
        prev = None
        node = t
        while node[_RT] is not None:
            prev = node
            node = node[_RT]
        if node[_LT] is not None:
            return node[_LT][_LAST]
        return prev[_PT]

    def _merge(self, a, b):
        """Upper hull of the union of two hulls, a strictly left of b except
        for at most one shared extreme dual x."""
        if a is None:
            return b
        if b is None:
            return a
        if a[_SZ] + b[_SZ] <= 4:
            return self._merge_small(a, b)
        alast = a[_LAST]
        bfirst = b[_FIRST]
        if alast[0] * bfirst[2] == bfirst[0] * alast[2]:
            # same boundary slope: only the higher intercept can be a vertex
            if alast[1] * bfirst[2] >= bfirst[1] * alast[2]:
                b = self._drop_prefix(b, 1)
            else:
                a = self._take_prefix(a, a[_SZ] - 1)
            if a is None:
                return b
            if b is None:
                return a
        i, j = self._bridge(a, b)
        left = self._take_prefix(a, i + 1)
        right = self._drop_prefix(b, j)
        return self._join2(left, right)

    def _merge_small(self, a, b):
        """Direct scan for up to four points; skips the bridge machinery."""
        pts = []
        stack = []
        for node in (a, b):
            while stack or node is not None:
                if node is not None:
                    stack.append(node)
                    node = node[_LT]
                else:
                    node = stack.pop()
                    pts.append(node[_PT])
                    node = node[_RT]
        hull = []
        for p in pts:
            while hull:
                q = hull[-1]
                if q[0] * p[2] == p[0] * q[2]:
                    if q[1] * p[2] >= p[1] * q[2]:
                        p = None
                        break
                    hull.pop()
                    continue
                if len(hull) >= 2 and _orient(hull[-2], q, p) >= 0:
                    hull.pop()
                    continue
                break
            if p is not None:
                hull.append(p)
        mk = self._mk
        k = len(hull)
        if k == 1:
            return mk(hull[0], None, None)
        if k == 2:
            return mk(hull[0], None, mk(hull[1], None, None))
        if k == 3:
            return mk(hull[1], mk(hull[0], None, None), mk(hull[2], None, None))
        return mk(
            hull[1],
            mk(hull[0], None, None),
            mk(hull[2], None, mk(hull[3], None, None)),
        )

    def _bridge(self, a, b):
        """Seam positions (i, j): keep a[0..i] and b[j..].

        Tandem descent over both chains.  At the candidate pair (u, v) each
        endpoint is classified against the segment u-v: on a concave chain the
        bridge touches where the segment's slope fits between the incoming and
        outgoing edge slopes.  One side can discard its node only when the
        classification pins the seam strictly to a subtree; the mixed state
        (u wants to move right, v wants to move left) is resolved by testing
        where the two support lines cross relative to a's slope range.
        """
        node_a, off_a, cand_a = a, 0, None
        pred_a = succ_a = None
        node_b, off_b, cand_b = b, 0, None
        pred_b = succ_b = None

        while node_a is not None and node_b is not None:
            self.work += 1
            la, ra = node_a[_LT], node_a[_RT]
            u = node_a[_PT]
            pos_u = off_a + (la[_SZ] if la is not None else 0)
            u_prev = la[_LAST] if la is not None else pred_a
            u_next = ra[_FIRST] if ra is not None else succ_a
            lb, rb = node_b[_LT], node_b[_RT]
            v = node_b[_PT]
            pos_v = off_b + (lb[_SZ] if lb is not None else 0)
            v_prev = lb[_LAST] if lb is not None else pred_b
            v_next = rb[_FIRST] if rb is not None else succ_b

            uX, uY, uW = u[0], u[1], u[2]
            vX, vY, vW = v[0], v[1], v[2]

            # orientation signs written out inline: this loop dominates merges
            if u_prev is not None:
                pX, pY, pW = u_prev[0], u_prev[1], u_prev[2]
                u_left = (uX * pW - pX * uW) * (vY * pW - pY * vW) - (
                    uY * pW - pY * uW
                ) * (vX * pW - pX * vW) >= 0
            else:
                u_left = False
            if v_next is not None:
                qX, qY, qW = v_next[0], v_next[1], v_next[2]
                v_right = (qX * vW - vX * qW) * (uY * vW - vY * uW) - (
                    qY * vW - vY * qW
                ) * (uX * vW - vX * uW) >= 0
            else:
                v_right = False

            if u_left:
                # seam is at or left of u; u stays a candidate
                cand_a = (pos_u, u)
                succ_a = u
                node_a = la
                if v_right:
                    cand_b = (pos_v, v)
                    pred_b = v
                    off_b = pos_v + 1
                    node_b = rb
                continue
            if v_right:
                cand_b = (pos_v, v)
                pred_b = v
                off_b = pos_v + 1
                node_b = rb
                continue

            if u_next is not None:
                qX, qY, qW = u_next[0], u_next[1], u_next[2]
                u_right = (qX * uW - uX * qW) * (vY * uW - uY * vW) - (
                    qY * uW - uY * qW
                ) * (vX * uW - uX * vW) < 0
            else:
                u_right = False
            if v_prev is not None:
                pX, pY, pW = v_prev[0], v_prev[1], v_prev[2]
                v_left = (vX * pW - pX * vW) * (uY * pW - pY * uW) - (
                    vY * pW - pY * vW
                ) * (uX * pW - pX * uW) < 0
            else:
                v_left = False

            if u_right:
                if v_left:
                    if self._cross_right_of(u, u_next, v_prev, v, a[_LAST]):
                        succ_b = v
                        node_b = lb
                    else:
                        pred_a = u
                        off_a = pos_u + 1
                        node_a = ra
                else:
                    # v settled: the seam on a is strictly right of u
                    pred_a = u
                    off_a = pos_u + 1
                    node_a = ra
            elif v_left:
                succ_b = v
                node_b = lb
            else:
                return pos_u, pos_v

        if node_a is None and node_b is None:
            assert cand_a is not None and cand_b is not None
            return cand_a[0], cand_b[0]
        if node_a is None:
            assert cand_a is not None
            return cand_a[0], self._tangent_b(b, cand_a[1])
        assert cand_b is not None
        return self._tangent_a(a, cand_b[1]), cand_b[0]

    @staticmethod
    def _cross_right_of(u, u_next, v_prev, v, a_last):
        """True if the support lines through (u, u_next) and (v_prev, v)
        cross strictly right of a's slope range (then the seam cannot be
        right of u, so b must move left).

        Projective integer form: a line through two homogeneous points is
        their 3-vector cross product, and so is the meet of two lines.  The
        mixed state guarantees distinct support slopes, so the meet is a
        finite point (pw != 0) and the comparison is a sign test.
        """
        l1x = u[1] * u_next[2] - u_next[1] * u[2]
        l1y = u[2] * u_next[0] - u_next[2] * u[0]
        l1w = u[0] * u_next[1] - u_next[0] * u[1]
        l2x = v_prev[1] * v[2] - v[1] * v_prev[2]
        l2y = v_prev[2] * v[0] - v[2] * v_prev[0]
        l2w = v_prev[0] * v[1] - v[0] * v_prev[1]
        px = l1y * l2w - l2y * l1w
        pw = l1x * l2y - l2x * l1y
        assert pw != 0, "mixed bridge state with parallel support lines"
        s = px * a_last[2] - a_last[0] * pw
        return s > 0 if pw > 0 else s < 0

    def _tangent_b(self, b, u):
        """Rightmost j maximizing the slope from the fixed point u to b[j].

        Those slopes rise then fall, so the last j whose successor does not
        drop below the ray u->b[j] is just left of the answer.
        """
        node = b
        off = 0
        succ = None
        last_rising = -1
        while node is not None:
            self.work += 1
            v = node[_PT]
            pos = off + _sz(node[_LT])
            v_next = node[_RT][_FIRST] if node[_RT] is not None else succ
            if v_next is not None and _orient(u, v, v_next) >= 0:
                last_rising = pos
                off = pos + 1
                node = node[_RT]
            else:
                succ = v
                node = node[_LT]
        return last_rising + 1

    def _tangent_a(self, a, v):
        """Leftmost i minimizing the slope from a[i] to the fixed point v."""
        node = a
        off = 0
        succ = None
        first_rising = None
        while node is not None:
            self.work += 1
            u = node[_PT]
            pos = off + _sz(node[_LT])
            u_next = node[_RT][_FIRST] if node[_RT] is not None else succ
            if u_next is not None and _orient(u, u_next, v) >= 0:
                first_rising = pos
                succ = u
                node = node[_LT]
            else:
                off = pos + 1
                node = node[_RT]
        return first_rising if first_rising is not None else a[_SZ] - 1

    # -- test hooks -----------------------------------------------------------

    def _hull_points(self) -> list[Line]:
        """Root hull vertices left to right (test/inspection hook)."""
        out = []

        def walk(t):
            if t is not None:
                walk(t[_LT])
                out.append(t[_PT][3])
                walk(t[_RT])

        if self._root is not None:
            walk(self._root.hull)
        return out

    def _check(self) -> None:
        """Validate every skeleton node's hull against a brute-force rebuild."""

        def gather(node, acc):
            if node is None:
                return
            gather(node.left, acc)
            acc.append(node.pt)
            gather(node.right, acc)

        def chain_points(t, acc):
            if t is None:
                return
            chain_points(t[_LT], acc)
            acc.append(t[_PT])
            chain_points(t[_RT], acc)

        def brute_hull(pts):
            best = {}
            for p in pts:
                key = (p[0], p[2]) if p[2] == 1 else (Fraction(p[0], p[2]), 1)
                q = best.get(key)
                if q is None or p[1] * q[2] > q[1] * p[2]:
                    best[key] = p
            ordered = sorted(best.values(), key=lambda p: Fraction(p[0], p[2]))
            hull = []
            for p in ordered:
                while len(hull) >= 2 and _orient(hull[-2], hull[-1], p) >= 0:
                    hull.pop()
                hull.append(p)
            return hull

        def check_node(node):
            if node is None:
                return
            pts = []
            gather(node, pts)
            want = brute_hull(pts)
            got = []
            chain_points(node.hull, got)
            assert len(got) == len(want), (node.key, len(got), len(want))
            for g, w in zip(got, want):
                assert g[0] * w[2] == w[0] * g[2] and g[1] * w[2] == w[1] * g[2], (
                    node.key,
                    g[3],
                    w[3],
                )
            lh = node.left.height if node.left is not None else 0
            rh = node.right.height if node.right is not None else 0
            assert abs(lh - rh) <= 1, "skeleton out of balance"
            check_node(node.left)
            check_node(node.right)

        check_node(self._root)
