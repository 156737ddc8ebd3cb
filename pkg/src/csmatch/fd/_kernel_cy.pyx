# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled search kernel.

Line-for-line port of ``_kernel_py``; consumes the same flat program and
must return identical solution lists.  The pure module is the reference:
change that first, then mirror here.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memset

cdef enum:
    K_UNARY_IN = 0
    K_CMP_VV = 1
    K_ELEM_VV = 2
    K_REIF = 3
    K_SUM = 4

cdef enum:
    C_CMP_C = 0
    C_CMP_VV = 1
    C_ELEM_C = 2
    C_ELEM_VV = 3

cdef enum:
    OP_EQ = 0
    OP_NE = 1
    OP_LT = 2
    OP_LE = 3
    OP_GT = 4
    OP_GE = 5

cdef enum:
    S_TRUE = 1
    S_FALSE = 0
    S_UNKNOWN = -1

cdef enum:
    T_REMOVE = 0
    T_LB = 1
    T_UB = 2

cdef int NEG_OP[6]
NEG_OP[OP_EQ] = OP_NE
NEG_OP[OP_NE] = OP_EQ
NEG_OP[OP_LT] = OP_GE
NEG_OP[OP_LE] = OP_GT
NEG_OP[OP_GT] = OP_LE
NEG_OP[OP_GE] = OP_LT


cdef inline bint cmp_op(long long a, int op, long long b) nogil:
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


cdef long long* _copy_ll(list values) except NULL:
    cdef Py_ssize_t n = len(values)
    cdef long long* out = <long long*> malloc((n if n > 0 else 1) * sizeof(long long))
    if out == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = values[i]
    return out


cdef int* _copy_i(list values) except NULL:
    cdef Py_ssize_t n = len(values)
    cdef int* out = <int*> malloc((n if n > 0 else 1) * sizeof(int))
    if out == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = values[i]
    return out


cdef class Kernel:
    cdef int nvars, ncons, ndec, total_positions
    cdef int* dom_off
    cdef long long* dom_val
    cdef int* ckind
    cdef int* coff
    cdef long long* cdata
    cdef int* woff
    cdef int* wdat
    cdef int* dec
    # state
    cdef unsigned char* alive
    cdef int* cnt
    cdef long long* possum
    cdef int* lbh
    cdef int* ubh
    # trail (doubling arrays)
    cdef int* t_tag
    cdef int* t_var
    cdef int* t_pay
    cdef long long tlen, tcap
    # constraint queue (ring buffer)
    cdef int* qbuf
    cdef int qhead, qtail, qcount
    cdef unsigned char* inq
    # deferred watcher wakeups
    cdef unsigned char* changed
    cdef int* changed_stack
    cdef int n_changed
    # sum scratch
    cdef long long* term_lo
    cdef long long* term_hi
    cdef int max_terms
    # outputs
    cdef list solutions
    cdef long long limit

    def __cinit__(self, prog):
        self.dom_off = NULL
        self.dom_val = NULL
        self.ckind = NULL
        self.coff = NULL
        self.cdata = NULL
        self.woff = NULL
        self.wdat = NULL
        self.dec = NULL
        self.alive = NULL
        self.cnt = NULL
        self.possum = NULL
        self.lbh = NULL
        self.ubh = NULL
        self.t_tag = NULL
        self.t_var = NULL
        self.t_pay = NULL
        self.qbuf = NULL
        self.inq = NULL
        self.term_lo = NULL
        self.term_hi = NULL

        self.nvars = prog.nvars
        self.ncons = len(prog.ckind)
        self.ndec = len(prog.decision)
        self.dom_off = _copy_i(prog.dom_off)
        self.dom_val = _copy_ll(prog.dom_val)
        self.ckind = _copy_i(prog.ckind) if self.ncons else <int*> malloc(sizeof(int))
        self.coff = _copy_i(prog.coff)
        self.cdata = _copy_ll(prog.cdata)
        self.woff = _copy_i(prog.woff)
        self.wdat = _copy_i(prog.wdat)
        self.dec = _copy_i(prog.decision)
        self.total_positions = prog.dom_off[prog.nvars] if prog.nvars else 0

        cdef int total = self.total_positions
        self.alive = <unsigned char*> malloc(total if total else 1)
        memset(self.alive, 1, total if total else 1)
        self.cnt = <int*> malloc((self.nvars if self.nvars else 1) * sizeof(int))
        self.possum = <long long*> malloc((self.nvars if self.nvars else 1) * sizeof(long long))
        self.lbh = <int*> malloc((self.nvars if self.nvars else 1) * sizeof(int))
        self.ubh = <int*> malloc((self.nvars if self.nvars else 1) * sizeof(int))
        cdef int v, c
        for v in range(self.nvars):
            c = self.dom_off[v + 1] - self.dom_off[v]
            self.cnt[v] = c
            self.possum[v] = (<long long> (c - 1)) * c // 2
            self.lbh[v] = 0
            self.ubh[v] = c - 1

        self.tcap = 4 * total + 64
        self.tlen = 0
        self.t_tag = <int*> malloc(self.tcap * sizeof(int))
        self.t_var = <int*> malloc(self.tcap * sizeof(int))
        self.t_pay = <int*> malloc(self.tcap * sizeof(int))

        self.qbuf = <int*> malloc((self.ncons + 1 if self.ncons else 1) * sizeof(int))
        self.qhead = 0
        self.qtail = 0
        self.qcount = 0
        self.inq = <unsigned char*> malloc(self.ncons if self.ncons else 1)
        memset(self.inq, 0, self.ncons if self.ncons else 1)
        self.changed = <unsigned char*> malloc(self.nvars if self.nvars else 1)
        memset(self.changed, 0, self.nvars if self.nvars else 1)
        self.changed_stack = <int*> malloc((self.nvars if self.nvars else 1) * sizeof(int))
        self.n_changed = 0

        cdef int i, nt
        self.max_terms = 1
        for i in range(self.ncons):
            if self.ckind[i] == K_SUM:
                nt = <int> self.cdata[self.coff[i] + 1]
                if nt > self.max_terms:
                    self.max_terms = nt
        self.term_lo = <long long*> malloc(self.max_terms * sizeof(long long))
        self.term_hi = <long long*> malloc(self.max_terms * sizeof(long long))

        self.solutions = []
        self.limit = -1

    def __dealloc__(self):
        free(self.dom_off); free(self.dom_val); free(self.ckind); free(self.coff)
        free(self.cdata); free(self.woff); free(self.wdat); free(self.dec)
        free(self.alive); free(self.cnt); free(self.possum); free(self.lbh); free(self.ubh)
        free(self.t_tag); free(self.t_var); free(self.t_pay)
        free(self.qbuf); free(self.inq); free(self.term_lo); free(self.term_hi)
        free(self.changed); free(self.changed_stack)

    # -- trail ----------------------------------------------------------

    cdef int _trail(self, int tag, int v, int pay) except -1:
        cdef long long newcap
        cdef int* nt
        cdef int* nv
        cdef int* np
        if self.tlen == self.tcap:
            newcap = self.tcap * 2
            nt = <int*> malloc(newcap * sizeof(int))
            nv = <int*> malloc(newcap * sizeof(int))
            np = <int*> malloc(newcap * sizeof(int))
            if nt == NULL or nv == NULL or np == NULL:
                raise MemoryError()
            for newcap in range(self.tlen):
                nt[newcap] = self.t_tag[newcap]
                nv[newcap] = self.t_var[newcap]
                np[newcap] = self.t_pay[newcap]
            free(self.t_tag); free(self.t_var); free(self.t_pay)
            self.t_tag = nt; self.t_var = nv; self.t_pay = np
            self.tcap = self.tcap * 2
        self.t_tag[self.tlen] = tag
        self.t_var[self.tlen] = v
        self.t_pay[self.tlen] = pay
        self.tlen += 1
        return 0

    cdef void undo_to(self, long long mark):
        cdef int tag, v, pay
        while self.tlen > mark:
            self.tlen -= 1
            tag = self.t_tag[self.tlen]
            v = self.t_var[self.tlen]
            pay = self.t_pay[self.tlen]
            if tag == T_REMOVE:
                self.alive[self.dom_off[v] + pay] = 1
                self.cnt[v] += 1
                self.possum[v] += pay
            elif tag == T_LB:
                self.lbh[v] = pay
            else:
                self.ubh[v] = pay

    # -- domain primitives ------------------------------------------------

    cdef inline long long value_at(self, int v, int pos):
        return self.dom_val[self.dom_off[v] + pos]

    cdef int find_pos(self, int v, long long value):
        cdef int lo = self.dom_off[v]
        cdef int hi = self.dom_off[v + 1]
        cdef int mid
        while lo < hi:
            mid = (lo + hi) >> 1
            if self.dom_val[mid] < value:
                lo = mid + 1
            else:
                hi = mid
        if lo < self.dom_off[v + 1] and self.dom_val[lo] == value:
            return lo - self.dom_off[v]
        return -1

    cdef int min_pos(self, int v) except -1:
        cdef int p = self.lbh[v]
        cdef int base = self.dom_off[v]
        cdef int old
        if self.alive[base + p]:
            return p
        old = p
        while not self.alive[base + p]:
            p += 1
        self.lbh[v] = p
        self._trail(T_LB, v, old)
        return p

    cdef int max_pos(self, int v) except -1:
        cdef int p = self.ubh[v]
        cdef int base = self.dom_off[v]
        cdef int old
        if self.alive[base + p]:
            return p
        old = p
        while not self.alive[base + p]:
            p -= 1
        self.ubh[v] = p
        self._trail(T_UB, v, old)
        return p

    cdef inline long long min_val(self, int v) except? -1:
        return self.value_at(v, self.min_pos(v))

    cdef inline long long max_val(self, int v) except? -1:
        return self.value_at(v, self.max_pos(v))

    cdef inline long long single_val(self, int v):
        return self.value_at(v, <int> self.possum[v])

    cdef int remove(self, int v, int pos) except -1:
        self.alive[self.dom_off[v] + pos] = 0
        self.cnt[v] -= 1
        self.possum[v] -= pos
        self._trail(T_REMOVE, v, pos)
        if not self.changed[v]:
            self.changed[v] = 1
            self.changed_stack[self.n_changed] = v
            self.n_changed += 1
        return 0

    cdef void flush_changed(self):
        # enqueue watchers of changed variables once per filter batch;
        # every filter is monotone, so the fixpoint does not depend on order
        cdef int j, i, v, c
        for j in range(self.n_changed):
            v = self.changed_stack[j]
            self.changed[v] = 0
            for i in range(self.woff[v], self.woff[v + 1]):
                c = self.wdat[i]
                if not self.inq[c]:
                    self.inq[c] = 1
                    self.qbuf[self.qtail] = c
                    self.qtail += 1
                    if self.qtail > self.ncons:
                        self.qtail = 0
                    self.qcount += 1
        self.n_changed = 0

    # -- enforcement helpers ---------------------------------------------

    cdef bint enforce_cmp_c(self, int v, int op, long long c) except? 0:
        cdef int base = self.dom_off[v]
        cdef int end = self.dom_off[v + 1]
        cdef int p, q, lo, hi, cut
        if op == OP_EQ:
            p = self.find_pos(v, c)
            if p < 0 or not self.alive[base + p]:
                return False
            if self.cnt[v] > 1:
                lo = self.min_pos(v)
                hi = self.max_pos(v)
                for q in range(lo, hi + 1):
                    if q != p and self.alive[base + q]:
                        self.remove(v, q)
            return True
        if op == OP_NE:
            p = self.find_pos(v, c)
            if p >= 0 and self.alive[base + p]:
                self.remove(v, p)
            return self.cnt[v] > 0
        if op == OP_LT:
            cut = self._bisect_left(v, c)
            return self._drop_from(v, cut)
        if op == OP_LE:
            cut = self._bisect_right(v, c)
            return self._drop_from(v, cut)
        if op == OP_GT:
            cut = self._bisect_right(v, c)
            return self._drop_until(v, cut)
        cut = self._bisect_left(v, c)
        return self._drop_until(v, cut)

    cdef int _bisect_left(self, int v, long long c):
        cdef int lo = self.dom_off[v]
        cdef int hi = self.dom_off[v + 1]
        cdef int mid
        while lo < hi:
            mid = (lo + hi) >> 1
            if self.dom_val[mid] < c:
                lo = mid + 1
            else:
                hi = mid
        return lo - self.dom_off[v]

    cdef int _bisect_right(self, int v, long long c):
        cdef int lo = self.dom_off[v]
        cdef int hi = self.dom_off[v + 1]
        cdef int mid
        while lo < hi:
            mid = (lo + hi) >> 1
            if self.dom_val[mid] <= c:
                lo = mid + 1
            else:
                hi = mid
        return lo - self.dom_off[v]

    cdef bint _drop_from(self, int v, int cut) except? 0:
        cdef int base = self.dom_off[v]
        cdef int q, lo, hi
        if self.cnt[v] == 0:
            return False
        hi = self.max_pos(v)
        lo = self.min_pos(v)
        if cut > lo:
            lo = cut
        for q in range(lo, hi + 1):
            if self.alive[base + q]:
                self.remove(v, q)
        return self.cnt[v] > 0

    cdef bint _drop_until(self, int v, int cut) except? 0:
        cdef int base = self.dom_off[v]
        cdef int q, lo, hi
        if self.cnt[v] == 0:
            return False
        lo = self.min_pos(v)
        hi = self.max_pos(v) + 1
        if cut < hi:
            hi = cut
        for q in range(lo, hi):
            if self.alive[base + q]:
                self.remove(v, q)
        return self.cnt[v] > 0

    cdef int status_cmp_c(self, int v, int op, long long c) except? -2:
        cdef int p
        cdef long long lo, hi
        if self.cnt[v] == 1:
            return S_TRUE if cmp_op(self.single_val(v), op, c) else S_FALSE
        if op == OP_EQ:
            p = self.find_pos(v, c)
            if p < 0 or not self.alive[self.dom_off[v] + p]:
                return S_FALSE
            return S_UNKNOWN
        if op == OP_NE:
            p = self.find_pos(v, c)
            if p < 0 or not self.alive[self.dom_off[v] + p]:
                return S_TRUE
            return S_UNKNOWN
        lo = self.min_val(v)
        hi = self.max_val(v)
        if op == OP_LT:
            return S_TRUE if hi < c else (S_FALSE if lo >= c else S_UNKNOWN)
        if op == OP_LE:
            return S_TRUE if hi <= c else (S_FALSE if lo > c else S_UNKNOWN)
        if op == OP_GT:
            return S_TRUE if lo > c else (S_FALSE if hi <= c else S_UNKNOWN)
        return S_TRUE if lo >= c else (S_FALSE if hi < c else S_UNKNOWN)

    cdef bint enforce_cmp_vv(self, int x, int op, int y) except? 0:
        if op == OP_EQ:
            if not self._intersect(x, y):
                return False
            return self._intersect(y, x)
        if op == OP_NE:
            if self.cnt[x] == 1 and not self.enforce_cmp_c(y, OP_NE, self.single_val(x)):
                return False
            if self.cnt[y] == 1 and not self.enforce_cmp_c(x, OP_NE, self.single_val(y)):
                return False
            return True
        if op == OP_LT:
            if not self.enforce_cmp_c(x, OP_LT, self.max_val(y)):
                return False
            return self.enforce_cmp_c(y, OP_GT, self.min_val(x))
        if op == OP_LE:
            if not self.enforce_cmp_c(x, OP_LE, self.max_val(y)):
                return False
            return self.enforce_cmp_c(y, OP_GE, self.min_val(x))
        if op == OP_GT:
            if not self.enforce_cmp_c(x, OP_GT, self.min_val(y)):
                return False
            return self.enforce_cmp_c(y, OP_LT, self.max_val(x))
        if not self.enforce_cmp_c(x, OP_GE, self.min_val(y)):
            return False
        return self.enforce_cmp_c(y, OP_LE, self.max_val(x))

    cdef bint _intersect(self, int x, int y) except? 0:
        cdef int base = self.dom_off[x]
        cdef int q, lo, hi, p
        cdef long long val
        if self.cnt[x] == 0:
            return False
        lo = self.min_pos(x)
        hi = self.max_pos(x)
        for q in range(lo, hi + 1):
            if self.alive[base + q]:
                val = self.dom_val[base + q]
                p = self.find_pos(y, val)
                if p < 0 or not self.alive[self.dom_off[y] + p]:
                    self.remove(x, q)
        return self.cnt[x] > 0

    cdef int status_cmp_vv(self, int x, int op, int y) except? -2:
        cdef long long xlo, xhi, ylo, yhi
        if self.cnt[x] == 1 and self.cnt[y] == 1:
            return S_TRUE if cmp_op(self.single_val(x), op, self.single_val(y)) else S_FALSE
        xlo = self.min_val(x)
        xhi = self.max_val(x)
        ylo = self.min_val(y)
        yhi = self.max_val(y)
        if op == OP_EQ:
            return S_FALSE if (xhi < ylo or xlo > yhi) else S_UNKNOWN
        if op == OP_NE:
            return S_TRUE if (xhi < ylo or xlo > yhi) else S_UNKNOWN
        if op == OP_LT:
            return S_TRUE if xhi < ylo else (S_FALSE if xlo >= yhi else S_UNKNOWN)
        if op == OP_LE:
            return S_TRUE if xhi <= ylo else (S_FALSE if xlo > yhi else S_UNKNOWN)
        if op == OP_GT:
            return S_TRUE if xlo > yhi else (S_FALSE if xhi <= ylo else S_UNKNOWN)
        return S_TRUE if xlo >= yhi else (S_FALSE if xhi < ylo else S_UNKNOWN)

    cdef bint enforce_elem_c(
        self, long long base_d, long long nlist, int idx, int op, long long c, bint keep_oor
    ) except? 0:
        cdef int base = self.dom_off[idx]
        cdef int q, lo, hi
        cdef long long k
        if self.cnt[idx] == 0:
            return False
        lo = self.min_pos(idx)
        hi = self.max_pos(idx)
        for q in range(lo, hi + 1):
            if not self.alive[base + q]:
                continue
            k = self.dom_val[base + q]
            if 0 <= k < nlist:
                if not cmp_op(self.cdata[base_d + k], op, c):
                    self.remove(idx, q)
            elif not keep_oor:
                self.remove(idx, q)
        return self.cnt[idx] > 0

    cdef int status_elem_c(
        self, long long base_d, long long nlist, int idx, int op, long long c
    ) except? -2:
        cdef int base = self.dom_off[idx]
        cdef int q, lo, hi
        cdef long long k
        cdef bint any_true = False, any_false = False, hit
        lo = self.min_pos(idx)
        hi = self.max_pos(idx)
        for q in range(lo, hi + 1):
            if not self.alive[base + q]:
                continue
            k = self.dom_val[base + q]
            hit = 0 <= k < nlist and cmp_op(self.cdata[base_d + k], op, c)
            if hit:
                any_true = True
            else:
                any_false = True
            if any_true and any_false:
                return S_UNKNOWN
        return S_TRUE if any_true else S_FALSE

    cdef bint enforce_elem_vv(
        self, long long base_d, long long nlist, int idx, int op, int t, bint keep_oor
    ) except? 0:
        cdef int ibase = self.dom_off[idx]
        cdef int tbase = self.dom_off[t]
        cdef int q, p, ilo, ihi, tlo, thi
        cdef long long k, lk, tv, tlo_v, thi_v, lmin, lmax
        cdef bint oor_alive = False, ok
        cdef int n_in_range = 0
        if self.cnt[idx] == 0 or self.cnt[t] == 0:
            return False
        ilo = self.min_pos(idx)
        ihi = self.max_pos(idx)
        tlo_v = self.min_val(t)
        thi_v = self.max_val(t)
        for q in range(ilo, ihi + 1):
            if not self.alive[ibase + q]:
                continue
            k = self.dom_val[ibase + q]
            if not (0 <= k < nlist):
                if keep_oor:
                    oor_alive = True
                else:
                    self.remove(idx, q)
                continue
            lk = self.cdata[base_d + k]
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
            return True
        # collect alive in-range list values for the t-side filter
        lmin = 0
        lmax = 0
        ilo = self.min_pos(idx)
        ihi = self.max_pos(idx)
        for q in range(ilo, ihi + 1):
            if self.alive[ibase + q]:
                k = self.dom_val[ibase + q]
                if 0 <= k < nlist:
                    lk = self.cdata[base_d + k]
                    if n_in_range == 0 or lk < lmin:
                        lmin = lk
                    if n_in_range == 0 or lk > lmax:
                        lmax = lk
                    n_in_range += 1
        if n_in_range == 0:
            return self.cnt[t] > 0
        tlo = self.min_pos(t)
        thi = self.max_pos(t)
        for q in range(tlo, thi + 1):
            if not self.alive[tbase + q]:
                continue
            tv = self.dom_val[tbase + q]
            if op == OP_EQ:
                ok = self._idx_supports_value(base_d, nlist, idx, tv)
            elif op == OP_NE:
                ok = n_in_range > 1 or lmin != tv
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

    cdef bint _idx_supports_value(self, long long base_d, long long nlist, int idx, long long tv):
        cdef int ibase = self.dom_off[idx]
        cdef int q
        cdef long long k
        for q in range(self.lbh[idx], self.ubh[idx] + 1):
            if self.alive[ibase + q]:
                k = self.dom_val[ibase + q]
                if 0 <= k < nlist and self.cdata[base_d + k] == tv:
                    return True
        return False

    cdef int status_elem_vv(
        self, long long base_d, long long nlist, int idx, int op, int t
    ) except? -2:
        cdef int ibase = self.dom_off[idx]
        cdef int tbase = self.dom_off[t]
        cdef int q, r, ilo, ihi, tlo, thi
        cdef long long k
        cdef bint any_true = False, any_false = False, hit
        ilo = self.min_pos(idx)
        ihi = self.max_pos(idx)
        tlo = self.min_pos(t)
        thi = self.max_pos(t)
        for q in range(ilo, ihi + 1):
            if not self.alive[ibase + q]:
                continue
            k = self.dom_val[ibase + q]
            for r in range(tlo, thi + 1):
                if not self.alive[tbase + r]:
                    continue
                hit = 0 <= k < nlist and cmp_op(self.cdata[base_d + k], op, self.dom_val[tbase + r])
                if hit:
                    any_true = True
                else:
                    any_false = True
                if any_true and any_false:
                    return S_UNKNOWN
        return S_TRUE if any_true else S_FALSE

    # -- condition dispatch -------------------------------------------------

    cdef bint _enforce_cond(self, int ck, long long p, bint truth) except? 0:
        cdef long long* d = self.cdata
        cdef int op
        if ck == C_CMP_C:
            op = <int> d[p + 1]
            if not truth:
                op = NEG_OP[op]
            return self.enforce_cmp_c(<int> d[p], op, d[p + 2])
        if ck == C_CMP_VV:
            op = <int> d[p + 1]
            if not truth:
                op = NEG_OP[op]
            return self.enforce_cmp_vv(<int> d[p], op, <int> d[p + 2])
        if ck == C_ELEM_C:
            op = <int> d[p + 1]
            if not truth:
                op = NEG_OP[op]
            return self.enforce_elem_c(p + 4, d[p + 3], <int> d[p], op, d[p + 2], not truth)
        op = <int> d[p + 1]
        if not truth:
            op = NEG_OP[op]
        return self.enforce_elem_vv(p + 4, d[p + 3], <int> d[p], op, <int> d[p + 2], not truth)

    cdef int _status_cond(self, int ck, long long p) except? -2:
        cdef long long* d = self.cdata
        if ck == C_CMP_C:
            return self.status_cmp_c(<int> d[p], <int> d[p + 1], d[p + 2])
        if ck == C_CMP_VV:
            return self.status_cmp_vv(<int> d[p], <int> d[p + 1], <int> d[p + 2])
        if ck == C_ELEM_C:
            return self.status_elem_c(p + 4, d[p + 3], <int> d[p], <int> d[p + 1], d[p + 2])
        return self.status_elem_vv(p + 4, d[p + 3], <int> d[p], <int> d[p + 1], <int> d[p + 2])

    # -- filters --------------------------------------------------------------

    cdef bint _filter(self, int cid) except? 0:
        cdef int kind = self.ckind[cid]
        cdef long long base = self.coff[cid]
        cdef long long* d = self.cdata
        cdef int v, q, lo, hi, s, b, nterms, i, vi
        cdef long long n, val, w, anchor, has_anchor
        cdef long long sum_lo, sum_hi, tlo, thi, lo_v, hi_v, dmin, dmax
        cdef long long tot_lo, tot_hi, wlo, whi, tv
        cdef int vbase, total

        if kind == K_UNARY_IN:
            v = <int> d[base]
            n = d[base + 1]
            if self.cnt[v] == 0:
                return False
            vbase = self.dom_off[v]
            lo = self.min_pos(v)
            hi = self.max_pos(v)
            for q in range(lo, hi + 1):
                if self.alive[vbase + q]:
                    val = self.dom_val[vbase + q]
                    if not self._allowed_contains(base + 2, n, val):
                        self.remove(v, q)
            return self.cnt[v] > 0

        if kind == K_CMP_VV:
            return self.enforce_cmp_vv(<int> d[base], <int> d[base + 1], <int> d[base + 2])

        if kind == K_ELEM_VV:
            return self.enforce_elem_vv(
                base + 4, d[base + 3], <int> d[base], <int> d[base + 1], <int> d[base + 2], False
            )

        if kind == K_REIF:
            b = <int> d[base]
            if self.cnt[b] == 1:
                return self._enforce_cond(<int> d[base + 1], base + 2, self.single_val(b) == 1)
            s = self._status_cond(<int> d[base + 1], base + 2)
            if s != S_UNKNOWN:
                return self.enforce_cmp_c(b, OP_EQ, s)
            return True

        # K_SUM
        total = <int> d[base]
        nterms = <int> d[base + 1]
        sum_lo = 0
        sum_hi = 0
        for i in range(nterms):
            w = d[base + 2 + 4 * i]
            vi = <int> d[base + 2 + 4 * i + 1]
            has_anchor = d[base + 2 + 4 * i + 2]
            anchor = d[base + 2 + 4 * i + 3]
            if self.cnt[vi] == 0:
                return False
            lo_v = self.min_val(vi)
            hi_v = self.max_val(vi)
            if not has_anchor:
                tlo = w * lo_v
                thi = w * hi_v
            else:
                if anchor <= lo_v:
                    dmin = lo_v - anchor
                elif anchor >= hi_v:
                    dmin = anchor - hi_v
                else:
                    dmin = self._closest_distance(vi, anchor)
                dmax = lo_v - anchor
                if dmax < 0:
                    dmax = -dmax
                tv = hi_v - anchor
                if tv < 0:
                    tv = -tv
                if tv > dmax:
                    dmax = tv
                tlo = w * dmin
                thi = w * dmax
            self.term_lo[i] = tlo
            self.term_hi[i] = thi
            sum_lo += tlo
            sum_hi += thi
        if self.cnt[total] == 0:
            return False
        if not self.enforce_cmp_c(total, OP_GE, sum_lo):
            return False
        if not self.enforce_cmp_c(total, OP_LE, sum_hi):
            return False
        tot_lo = self.min_val(total)
        tot_hi = self.max_val(total)
        for i in range(nterms):
            w = d[base + 2 + 4 * i]
            vi = <int> d[base + 2 + 4 * i + 1]
            has_anchor = d[base + 2 + 4 * i + 2]
            anchor = d[base + 2 + 4 * i + 3]
            tlo = self.term_lo[i]
            thi = self.term_hi[i]
            wlo = tot_lo - (sum_hi - thi)
            whi = tot_hi - (sum_lo - tlo)
            if wlo <= tlo and whi >= thi:
                continue
            vbase = self.dom_off[vi]
            lo = self.min_pos(vi)
            hi = self.max_pos(vi)
            for q in range(lo, hi + 1):
                if not self.alive[vbase + q]:
                    continue
                val = self.dom_val[vbase + q]
                if has_anchor:
                    tv = val - anchor
                    if tv < 0:
                        tv = -tv
                    tv = w * tv
                else:
                    tv = w * val
                if tv < wlo or tv > whi:
                    self.remove(vi, q)
            if self.cnt[vi] == 0:
                return False
        return True

    cdef bint _allowed_contains(self, long long start, long long n, long long val):
        cdef long long lo = start
        cdef long long hi = start + n
        cdef long long mid
        while lo < hi:
            mid = (lo + hi) >> 1
            if self.cdata[mid] < val:
                lo = mid + 1
            else:
                hi = mid
        return lo < start + n and self.cdata[lo] == val

    cdef long long _closest_distance(self, int v, long long anchor) except? -1:
        cdef int base = self.dom_off[v]
        cdef int p = self._bisect_left(v, anchor)
        cdef long long best = -1
        cdef long long d2
        cdef int q = p
        cdef int hi = self.max_pos(v)
        cdef int lo = self.min_pos(v)
        while q <= hi:
            if self.alive[base + q]:
                best = self.dom_val[base + q] - anchor
                break
            q += 1
        q = p - 1
        while q >= lo:
            if self.alive[base + q]:
                d2 = anchor - self.dom_val[base + q]
                if best < 0 or d2 < best:
                    best = d2
                break
            q -= 1
        return best if best >= 0 else 0

    # -- propagation and search ------------------------------------------------

    cdef bint propagate(self) except? 0:
        cdef int cid, j
        cdef bint ok
        self.flush_changed()
        while self.qcount > 0:
            cid = self.qbuf[self.qhead]
            self.qhead += 1
            if self.qhead > self.ncons:
                self.qhead = 0
            self.qcount -= 1
            self.inq[cid] = 0
            ok = self._filter(cid)
            if not ok:
                while self.qcount > 0:
                    cid = self.qbuf[self.qhead]
                    self.qhead += 1
                    if self.qhead > self.ncons:
                        self.qhead = 0
                    self.qcount -= 1
                    self.inq[cid] = 0
                self.qhead = 0
                self.qtail = 0
                for j in range(self.n_changed):
                    self.changed[self.changed_stack[j]] = 0
                self.n_changed = 0
                return False
            self.flush_changed()
        self.qhead = 0
        self.qtail = 0
        return True

    cdef bint dfs(self, int di) except? 0:
        cdef int v, base, lo, hi, q, nb, pos, j
        cdef long long mark
        cdef int* branch
        cdef bint keep_going
        cdef tuple row
        while di < self.ndec and self.cnt[self.dec[di]] == 1:
            di += 1
        if di == self.ndec:
            row = tuple([self.single_val(self.dec[j]) for j in range(self.ndec)])
            self.solutions.append(row)
            return self.limit < 0 or len(self.solutions) < self.limit
        v = self.dec[di]
        base = self.dom_off[v]
        lo = self.min_pos(v)
        hi = self.max_pos(v)
        branch = <int*> malloc((hi - lo + 1) * sizeof(int))
        if branch == NULL:
            raise MemoryError()
        nb = 0
        for q in range(lo, hi + 1):
            if self.alive[base + q]:
                branch[nb] = q
                nb += 1
        keep_going = True
        try:
            for j in range(nb):
                if not keep_going:
                    break
                pos = branch[j]
                mark = self.tlen
                for q in range(nb):
                    if branch[q] != pos and self.alive[base + branch[q]]:
                        self.remove(v, branch[q])
                if self.propagate():
                    if not self.dfs(di + 1):
                        keep_going = False
                self.undo_to(mark)
        finally:
            free(branch)
        return keep_going

    def run(self, long long limit):
        self.limit = limit
        cdef int cid
        if self.nvars == 0:
            return []
        for cid in range(self.ncons):
            self.inq[cid] = 1
            self.qbuf[self.qtail] = cid
            self.qtail += 1
            if self.qtail > self.ncons:
                self.qtail = 0
            self.qcount += 1
        if not self.propagate():
            return self.solutions
        self.dfs(0)
        return self.solutions


def search(prog, limit=None):
    """Enumerate all solutions; same contract as the pure kernel."""
    kernel = Kernel(prog)
    return kernel.run(-1 if limit is None else limit)
