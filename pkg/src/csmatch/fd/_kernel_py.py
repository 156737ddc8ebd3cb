"""Pure-Python search kernel.

Depth-first search over the decision variables in registration order with
ascending value order, interleaved with constraint propagation to a fixed
point.  Filters only ever remove values with no support, so enumeration is
complete; assignments that survive propagation at a leaf satisfy every
constraint, so it is also sound.

The compiled kernel (``_kernel_cy``) is a line-for-line port of this
module; any semantic change here must be mirrored there.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right

from .program import (
    C_CMP_C,
    C_CMP_VV,
    C_ELEM_C,
    C_ELEM_VV,
    K_CMP_VV,
    K_ELEM_VV,
    K_REIF,
    K_SUM,
    K_UNARY_IN,
    FlatProgram,
)

OP_EQ, OP_NE, OP_LT, OP_LE, OP_GT, OP_GE = range(6)
_NEG = (OP_NE, OP_EQ, OP_GE, OP_GT, OP_LE, OP_LT)

TRUE, FALSE, UNKNOWN = 1, 0, -1

# trail entry tags
T_REMOVE, T_LB, T_UB = 0, 1, 2


def _cmp(a: int, op: int, b: int) -> bool:
    if op == OP_EQ:
        return a == b
    if op == OP_NE:
        return a != b
    if op == OP_LT:
        return a < b
    if op == OP_LE:
        return a <= b
    if op == OP_GT:
        return a > b
    return a >= b


class _State:
    """Mutable search state over a flat program."""

    __slots__ = (
        "prog",
        "alive",
        "cnt",
        "possum",
        "lbh",
        "ubh",
        "t_tag",
        "t_var",
        "t_pay",
        "queue",
        "qhead",
        "inq",
        "changed",
        "changed_stack",
    )

    def __init__(self, prog: FlatProgram):
        self.prog = prog
        total = prog.dom_off[-1]
        self.alive = bytearray(b"\x01") * total if total else bytearray()
        self.cnt = [prog.dom_off[v + 1] - prog.dom_off[v] for v in range(prog.nvars)]
        self.possum = [(c - 1) * c // 2 for c in self.cnt]
        self.lbh = [0] * prog.nvars
        self.ubh = [c - 1 for c in self.cnt]
        self.t_tag: list[int] = []
        self.t_var: list[int] = []
        self.t_pay: list[int] = []
        self.queue: list[int] = []
        self.qhead = 0
        self.inq = bytearray(len(prog.ckind))
        self.changed = bytearray(prog.nvars)
        self.changed_stack: list[int] = []

    # -- domain primitives --------------------------------------------

    def value_at(self, v: int, pos: int) -> int:
        return self.prog.dom_val[self.prog.dom_off[v] + pos]

    def is_alive(self, v: int, pos: int) -> bool:
        return self.alive[self.prog.dom_off[v] + pos] == 1

    def find_pos(self, v: int, value: int) -> int:
        base = self.prog.dom_off[v]
        end = self.prog.dom_off[v + 1]
        p = bisect_left(self.prog.dom_val, value, base, end)
        if p < end and self.prog.dom_val[p] == value:
            return p - base
        return -1

    def min_pos(self, v: int) -> int:
        p = self.lbh[v]
        base = self.prog.dom_off[v]
        if self.alive[base + p]:
            return p
        old = p
        while not self.alive[base + p]:
            p += 1
        self.lbh[v] = p
        self.t_tag.append(T_LB)
        self.t_var.append(v)
        self.t_pay.append(old)
        return p

    def max_pos(self, v: int) -> int:
        p = self.ubh[v]
        base = self.prog.dom_off[v]
        if self.alive[base + p]:
            return p
        old = p
        while not self.alive[base + p]:
            p -= 1
        self.ubh[v] = p
        self.t_tag.append(T_UB)
        self.t_var.append(v)
        self.t_pay.append(old)
        return p

    def min_val(self, v: int) -> int:
        return self.value_at(v, self.min_pos(v))

    def max_val(self, v: int) -> int:
        return self.value_at(v, self.max_pos(v))

    def single_val(self, v: int) -> int:
        # only valid when cnt[v] == 1; possum then holds the lone position
        return self.value_at(v, self.possum[v])

    def remove(self, v: int, pos: int) -> None:
        self.alive[self.prog.dom_off[v] + pos] = 0
        self.cnt[v] -= 1
        self.possum[v] -= pos
        self.t_tag.append(T_REMOVE)
        self.t_var.append(v)
        self.t_pay.append(pos)
        if not self.changed[v]:
            self.changed[v] = 1
            self.changed_stack.append(v)

    def flush_changed(self) -> None:
        """Enqueue the watchers of every changed variable, once per batch.

        Deferring the watcher walk to the end of each filter run keeps the
        cost per removal constant; the propagation fixpoint is unaffected
        because all filters are monotone.
        """
        wo = self.prog.woff
        wd = self.prog.wdat
        for v in self.changed_stack:
            self.changed[v] = 0
            for i in range(wo[v], wo[v + 1]):
                c = wd[i]
                if not self.inq[c]:
                    self.inq[c] = 1
                    self.queue.append(c)
        self.changed_stack.clear()

    def undo_to(self, mark: int) -> None:
        while len(self.t_tag) > mark:
            tag = self.t_tag.pop()
            v = self.t_var.pop()
            pay = self.t_pay.pop()
            if tag == T_REMOVE:
                self.alive[self.prog.dom_off[v] + pay] = 1
                self.cnt[v] += 1
                self.possum[v] += pay
            elif tag == T_LB:
                self.lbh[v] = pay
            else:
                self.ubh[v] = pay

    # -- enforcement helpers -------------------------------------------
    # Each returns False when a domain wiped out.

    def enforce_cmp_c(self, v: int, op: int, c: int) -> bool:
        base = self.prog.dom_off[v]
        if op == OP_EQ:
            p = self.find_pos(v, c)
            if p < 0 or not self.alive[base + p]:
                return False
            if self.cnt[v] > 1:
                lo, hi = self.min_pos(v), self.max_pos(v)
                for q in range(lo, hi + 1):
                    if q != p and self.alive[base + q]:
                        self.remove(v, q)
            return True
        if op == OP_NE:
            p = self.find_pos(v, c)
            if p >= 0 and self.alive[base + p]:
                self.remove(v, p)
            return self.cnt[v] > 0
        # ordered operators: drop a prefix or suffix of positions
        end = self.prog.dom_off[v + 1]
        if op == OP_LT:
            cut = bisect_left(self.prog.dom_val, c, base, end) - base
            return self._drop_from(v, cut)
        if op == OP_LE:
            cut = bisect_right(self.prog.dom_val, c, base, end) - base
            return self._drop_from(v, cut)
        if op == OP_GT:
            cut = bisect_right(self.prog.dom_val, c, base, end) - base
            return self._drop_until(v, cut)
        cut = bisect_left(self.prog.dom_val, c, base, end) - base
        return self._drop_until(v, cut)

    def _drop_from(self, v: int, cut: int) -> bool:
        """Remove all alive positions >= cut."""
        if self.cnt[v] == 0:
            return False
        base = self.prog.dom_off[v]
        hi = self.max_pos(v)
        for q in range(max(cut, self.min_pos(v)), hi + 1):
            if self.alive[base + q]:
                self.remove(v, q)
        return self.cnt[v] > 0

    def _drop_until(self, v: int, cut: int) -> bool:
        """Remove all alive positions < cut."""
        if self.cnt[v] == 0:
            return False
        base = self.prog.dom_off[v]
        lo = self.min_pos(v)
        for q in range(lo, min(cut, self.max_pos(v) + 1)):
            if self.alive[base + q]:
                self.remove(v, q)
        return self.cnt[v] > 0

    def status_cmp_c(self, v: int, op: int, c: int) -> int:
        if self.cnt[v] == 1:
            return TRUE if _cmp(self.single_val(v), op, c) else FALSE
        if op == OP_EQ:
            p = self.find_pos(v, c)
            if p < 0 or not self.alive[self.prog.dom_off[v] + p]:
                return FALSE
            return UNKNOWN
        if op == OP_NE:
            p = self.find_pos(v, c)
            if p < 0 or not self.alive[self.prog.dom_off[v] + p]:
                return TRUE
            return UNKNOWN
        lo, hi = self.min_val(v), self.max_val(v)
        if op == OP_LT:
            return TRUE if hi < c else (FALSE if lo >= c else UNKNOWN)
        if op == OP_LE:
            return TRUE if hi <= c else (FALSE if lo > c else UNKNOWN)
        if op == OP_GT:
            return TRUE if lo > c else (FALSE if hi <= c else UNKNOWN)
        return TRUE if lo >= c else (FALSE if hi < c else UNKNOWN)

    def enforce_cmp_vv(self, x: int, op: int, y: int) -> bool:
        if op == OP_EQ:
            return self._intersect(x, y) and self._intersect(y, x)
        if op == OP_NE:
            if self.cnt[x] == 1 and not self.enforce_cmp_c(y, OP_NE, self.single_val(x)):
                return False
            if self.cnt[y] == 1 and not self.enforce_cmp_c(x, OP_NE, self.single_val(y)):
                return False
            return True
        if op == OP_LT:
            return self.enforce_cmp_c(x, OP_LT, self.max_val(y)) and self.enforce_cmp_c(
                y, OP_GT, self.min_val(x)
            )
        if op == OP_LE:
            return self.enforce_cmp_c(x, OP_LE, self.max_val(y)) and self.enforce_cmp_c(
                y, OP_GE, self.min_val(x)
            )
        if op == OP_GT:
            return self.enforce_cmp_c(x, OP_GT, self.min_val(y)) and self.enforce_cmp_c(
                y, OP_LT, self.max_val(x)
            )
        return self.enforce_cmp_c(x, OP_GE, self.min_val(y)) and self.enforce_cmp_c(
            y, OP_LE, self.max_val(x)
        )

    def _intersect(self, x: int, y: int) -> bool:
        """Drop values of x that are not alive in y."""
        base = self.prog.dom_off[x]
        if self.cnt[x] == 0:
            return False
        lo, hi = self.min_pos(x), self.max_pos(x)
        for q in range(lo, hi + 1):
            if self.alive[base + q]:
                val = self.prog.dom_val[base + q]
                p = self.find_pos(y, val)
                if p < 0 or not self.alive[self.prog.dom_off[y] + p]:
                    self.remove(x, q)
        return self.cnt[x] > 0

    def status_cmp_vv(self, x: int, op: int, y: int) -> int:
        if self.cnt[x] == 1 and self.cnt[y] == 1:
            return TRUE if _cmp(self.single_val(x), op, self.single_val(y)) else FALSE
        xlo, xhi = self.min_val(x), self.max_val(x)
        ylo, yhi = self.min_val(y), self.max_val(y)
        if op == OP_EQ:
            return FALSE if (xhi < ylo or xlo > yhi) else UNKNOWN
        if op == OP_NE:
            return TRUE if (xhi < ylo or xlo > yhi) else UNKNOWN
        if op == OP_LT:
            return TRUE if xhi < ylo else (FALSE if xlo >= yhi else UNKNOWN)
        if op == OP_LE:
            return TRUE if xhi <= ylo else (FALSE if xlo > yhi else UNKNOWN)
        if op == OP_GT:
            return TRUE if xlo > yhi else (FALSE if xhi <= ylo else UNKNOWN)
        return TRUE if xlo >= yhi else (FALSE if xhi < ylo else UNKNOWN)

    def enforce_elem_c(
        self, base_d: int, nlist: int, idx: int, op: int, c: int, keep_oor: bool
    ) -> bool:
        """Filter idx so surviving values k have list[k] op c (in range).

        ``base_d`` offsets into the constraint data pool where the list
        values live.  Out-of-range values are kept only when enforcing a
        negated condition, where they make the original condition false.
        """
        dv = self.prog.dom_val
        cd = self.prog.cdata
        base = self.prog.dom_off[idx]
        if self.cnt[idx] == 0:
            return False
        lo, hi = self.min_pos(idx), self.max_pos(idx)
        for q in range(lo, hi + 1):
            if not self.alive[base + q]:
                continue
            k = dv[base + q]
            if 0 <= k < nlist:
                if not _cmp(cd[base_d + k], op, c):
                    self.remove(idx, q)
            elif not keep_oor:
                self.remove(idx, q)
        return self.cnt[idx] > 0

    def status_elem_c(self, base_d: int, nlist: int, idx: int, op: int, c: int) -> int:
        dv = self.prog.dom_val
        cd = self.prog.cdata
        base = self.prog.dom_off[idx]
        any_true = any_false = False
        lo, hi = self.min_pos(idx), self.max_pos(idx)
        for q in range(lo, hi + 1):
            if not self.alive[base + q]:
                continue
            k = dv[base + q]
            hit = 0 <= k < nlist and _cmp(cd[base_d + k], op, c)
            if hit:
                any_true = True
            else:
                any_false = True
            if any_true and any_false:
                return UNKNOWN
        return TRUE if any_true else FALSE

    def enforce_elem_vv(
        self, base_d: int, nlist: int, idx: int, op: int, t: int, keep_oor: bool
    ) -> bool:
        """Dual support filter for list[idx] op tvar."""
        dv = self.prog.dom_val
        cd = self.prog.cdata
        ibase = self.prog.dom_off[idx]
        tbase = self.prog.dom_off[t]
        if self.cnt[idx] == 0 or self.cnt[t] == 0:
            return False
        # filter idx: value k survives if some alive t-value supports it
        ilo, ihi = self.min_pos(idx), self.max_pos(idx)
        tlo_v, thi_v = self.min_val(t), self.max_val(t)
        oor_alive = False
        for q in range(ilo, ihi + 1):
            if not self.alive[ibase + q]:
                continue
            k = dv[ibase + q]
            if not 0 <= k < nlist:
                if keep_oor:
                    oor_alive = True
                else:
                    self.remove(idx, q)
                continue
            lk = cd[base_d + k]
            if op == OP_EQ:
                p = self.find_pos(t, lk)
                ok = p >= 0 and self.alive[tbase + p]
            elif op == OP_NE:
                ok = self.cnt[t] > 1 or self.single_val(t) != lk
            elif op == OP_LT:
                ok = lk < thi_v
            elif op == OP_LE:
                ok = lk <= thi_v
            elif op == OP_GT:
                ok = lk > tlo_v
            else:
                ok = lk >= tlo_v
            if not ok:
                self.remove(idx, q)
        if self.cnt[idx] == 0:
            return False
        if oor_alive:
            # an out-of-range index value supports every t under negation
            return True
        # filter t: value tv survives if some alive in-range k supports it
        in_range_vals = []
        ilo, ihi = self.min_pos(idx), self.max_pos(idx)
        for q in range(ilo, ihi + 1):
            if self.alive[ibase + q]:
                k = dv[ibase + q]
                if 0 <= k < nlist:
                    in_range_vals.append(cd[base_d + k])
        if not in_range_vals:
            return self.cnt[t] > 0
        lmin, lmax = min(in_range_vals), max(in_range_vals)
        tlo, thi = self.min_pos(t), self.max_pos(t)
        for q in range(tlo, thi + 1):
            if not self.alive[tbase + q]:
                continue
            tv = dv[tbase + q]
            if op == OP_EQ:
                ok = tv in in_range_vals
            elif op == OP_NE:
                ok = len(in_range_vals) > 1 or in_range_vals[0] != tv
            elif op == OP_LT:
                ok = lmin < tv
            elif op == OP_LE:
                ok = lmin <= tv
            elif op == OP_GT:
                ok = lmax > tv
            else:
                ok = lmax >= tv
            if not ok:
                self.remove(t, q)
        return self.cnt[t] > 0

    def status_elem_vv(self, base_d: int, nlist: int, idx: int, op: int, t: int) -> int:
        dv = self.prog.dom_val
        cd = self.prog.cdata
        ibase = self.prog.dom_off[idx]
        tbase = self.prog.dom_off[t]
        any_true = any_false = False
        ilo, ihi = self.min_pos(idx), self.max_pos(idx)
        tlo, thi = self.min_pos(t), self.max_pos(t)
        for q in range(ilo, ihi + 1):
            if not self.alive[ibase + q]:
                continue
            k = dv[ibase + q]
            for r in range(tlo, thi + 1):
                if not self.alive[tbase + r]:
                    continue
                hit = 0 <= k < nlist and _cmp(cd[base_d + k], op, dv[tbase + r])
                if hit:
                    any_true = True
                else:
                    any_false = True
                if any_true and any_false:
                    return UNKNOWN
        return TRUE if any_true else FALSE


def _filter(st: _State, cid: int) -> bool:
    prog = st.prog
    kind = prog.ckind[cid]
    base = prog.coff[cid]
    d = prog.cdata

    if kind == K_UNARY_IN:
        v = d[base]
        n = d[base + 1]
        if st.cnt[v] == 0:
            return False
        vbase = prog.dom_off[v]
        lo, hi = st.min_pos(v), st.max_pos(v)
        for q in range(lo, hi + 1):
            if st.alive[vbase + q]:
                val = prog.dom_val[vbase + q]
                p = bisect_left(d, val, base + 2, base + 2 + n)
                if p >= base + 2 + n or d[p] != val:
                    st.remove(v, q)
        return st.cnt[v] > 0

    if kind == K_CMP_VV:
        return st.enforce_cmp_vv(d[base], d[base + 1], d[base + 2])

    if kind == K_ELEM_VV:
        idx, op, t, n = d[base], d[base + 1], d[base + 2], d[base + 3]
        return st.enforce_elem_vv(base + 4, n, idx, op, t, keep_oor=False)

    if kind == K_REIF:
        b = d[base]
        ck = d[base + 1]
        p = base + 2
        if st.cnt[b] == 1:
            truth = st.single_val(b) == 1
            return _enforce_cond(st, ck, p, truth)
        s = _status_cond(st, ck, p)
        if s != UNKNOWN:
            # b has domain {0,1}; position == value
            return st.enforce_cmp_c(b, OP_EQ, s)
        return True

    # K_SUM
    total = d[base]
    nterms = d[base + 1]
    tb = base + 2
    sum_lo = 0
    sum_hi = 0
    bounds = []
    for i in range(nterms):
        w = d[tb + 4 * i]
        v = d[tb + 4 * i + 1]
        has_anchor = d[tb + 4 * i + 2]
        anchor = d[tb + 4 * i + 3]
        if st.cnt[v] == 0:
            return False
        lo_v, hi_v = st.min_val(v), st.max_val(v)
        if not has_anchor:
            tlo, thi = w * lo_v, w * hi_v
        else:
            if anchor <= lo_v:
                dmin = lo_v - anchor
            elif anchor >= hi_v:
                dmin = anchor - hi_v
            else:
                dmin = _closest_distance(st, v, anchor)
            dmax = max(abs(lo_v - anchor), abs(hi_v - anchor))
            tlo, thi = w * dmin, w * dmax
        bounds.append((tlo, thi))
        sum_lo += tlo
        sum_hi += thi
    if st.cnt[total] == 0:
        return False
    if not st.enforce_cmp_c(total, OP_GE, sum_lo):
        return False
    if not st.enforce_cmp_c(total, OP_LE, sum_hi):
        return False
    tot_lo, tot_hi = st.min_val(total), st.max_val(total)
    for i in range(nterms):
        w = d[tb + 4 * i]
        v = d[tb + 4 * i + 1]
        has_anchor = d[tb + 4 * i + 2]
        anchor = d[tb + 4 * i + 3]
        tlo, thi = bounds[i]
        wlo = tot_lo - (sum_hi - thi)
        whi = tot_hi - (sum_lo - tlo)
        if wlo <= tlo and whi >= thi:
            continue
        vbase = prog.dom_off[v]
        lo, hi = st.min_pos(v), st.max_pos(v)
        for q in range(lo, hi + 1):
            if not st.alive[vbase + q]:
                continue
            val = prog.dom_val[vbase + q]
            tv = w * (abs(val - anchor) if has_anchor else val)
            if tv < wlo or tv > whi:
                st.remove(v, q)
        if st.cnt[v] == 0:
            return False
    return True


def _closest_distance(st: _State, v: int, anchor: int) -> int:
    """Minimum |value - anchor| over alive values of v."""
    prog = st.prog
    base = prog.dom_off[v]
    end = prog.dom_off[v + 1]
    p = bisect_left(prog.dom_val, anchor, base, end) - base
    best = -1
    q = p
    hi = st.max_pos(v)
    while q <= hi:
        if st.alive[base + q]:
            best = prog.dom_val[base + q] - anchor
            break
        q += 1
    q = p - 1
    lo = st.min_pos(v)
    while q >= lo:
        if st.alive[base + q]:
            d2 = anchor - prog.dom_val[base + q]
            if best < 0 or d2 < best:
                best = d2
            break
        q -= 1
    return best if best >= 0 else 0


def _enforce_cond(st: _State, ck: int, p: int, truth: bool) -> bool:
    d = st.prog.cdata
    if ck == C_CMP_C:
        op = d[p + 1] if truth else _NEG[d[p + 1]]
        return st.enforce_cmp_c(d[p], op, d[p + 2])
    if ck == C_CMP_VV:
        op = d[p + 1] if truth else _NEG[d[p + 1]]
        return st.enforce_cmp_vv(d[p], op, d[p + 2])
    if ck == C_ELEM_C:
        op = d[p + 1] if truth else _NEG[d[p + 1]]
        return st.enforce_elem_c(p + 4, d[p + 3], d[p], op, d[p + 2], keep_oor=not truth)
    op = d[p + 1] if truth else _NEG[d[p + 1]]
    return st.enforce_elem_vv(p + 4, d[p + 3], d[p], op, d[p + 2], keep_oor=not truth)


def _status_cond(st: _State, ck: int, p: int) -> int:
    d = st.prog.cdata
    if ck == C_CMP_C:
        return st.status_cmp_c(d[p], d[p + 1], d[p + 2])
    if ck == C_CMP_VV:
        return st.status_cmp_vv(d[p], d[p + 1], d[p + 2])
    if ck == C_ELEM_C:
        return st.status_elem_c(p + 4, d[p + 3], d[p], d[p + 1], d[p + 2])
    return st.status_elem_vv(p + 4, d[p + 3], d[p], d[p + 1], d[p + 2])


def _propagate(st: _State) -> bool:
    st.flush_changed()
    while st.qhead < len(st.queue):
        cid = st.queue[st.qhead]
        st.qhead += 1
        st.inq[cid] = 0
        ok = _filter(st, cid)
        if not ok:
            # drain and clear pending state before reporting failure
            while st.qhead < len(st.queue):
                st.inq[st.queue[st.qhead]] = 0
                st.qhead += 1
            st.queue.clear()
            st.qhead = 0
            for v in st.changed_stack:
                st.changed[v] = 0
            st.changed_stack.clear()
            return False
        st.flush_changed()
    st.queue.clear()
    st.qhead = 0
    return True


def search(prog: FlatProgram, limit: int | None = None) -> list[tuple[int, ...]]:
    """Enumerate all solutions as tuples over the decision variables.

    Order is lexicographic by registration order with ascending values.
    ``limit`` optionally stops after that many solutions.
    """
    st = _State(prog)
    if prog.nvars == 0:
        return []
    for cid in range(len(prog.ckind)):
        st.inq[cid] = 1
        st.queue.append(cid)
    if not _propagate(st):
        return []

    solutions: list[tuple[int, ...]] = []
    dec = prog.decision
    nd = len(dec)

    def dfs(di: int) -> bool:
        while di < nd and st.cnt[dec[di]] == 1:
            di += 1
        if di == nd:
            solutions.append(tuple(st.single_val(v) for v in dec))
            return limit is None or len(solutions) < limit
        v = dec[di]
        base = prog.dom_off[v]
        lo, hi = st.min_pos(v), st.max_pos(v)
        branch = [q for q in range(lo, hi + 1) if st.alive[base + q]]
        for pos in branch:
            mark = len(st.t_tag)
            for q in branch:
                if q != pos and st.alive[base + q]:
                    st.remove(v, q)
            if _propagate(st):
                if not dfs(di + 1):
                    return False
            st.undo_to(mark)
        return True

    dfs(0)
    return solutions
