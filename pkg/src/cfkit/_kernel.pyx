# cython: language_level=3, boundscheck=False, wraparound=False
"""GMP-backed fraction-free three-term recurrence (compiled backend).

Same interface as cfkit._kernel_py.  Python ints cross the boundary as
hexadecimal strings, which is linear time in both directions.
"""
from libc.stdlib cimport malloc, free

cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef __mpz_struct mpz_t[1]
    ctypedef __mpz_struct* mpz_ptr
    void mpz_init(mpz_ptr)
    void mpz_clear(mpz_ptr)
    int mpz_set_str(mpz_ptr, const char*, int)
    char* mpz_get_str(char*, int, mpz_ptr)
    size_t mpz_sizeinbase(mpz_ptr, int)
    void mpz_mul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_addmul(mpz_ptr, mpz_ptr, mpz_ptr)
    void mpz_swap(mpz_ptr, mpz_ptr)
    void mpz_set_si(mpz_ptr, long)

BACKEND = "compiled"

cdef inline void _load(mpz_ptr dst, object value) except *:
    cdef bytes s
    if -0x3FFFFFFFFFFFFFFF <= value <= 0x3FFFFFFFFFFFFFFF:
        mpz_set_si(dst, <long>value)
        return
    s = format(value, "x").encode("ascii")
    if mpz_set_str(dst, s, 16) != 0:
        raise ValueError("could not load integer into GMP")


cdef object _dump(mpz_ptr src):
    cdef size_t n = mpz_sizeinbase(src, 16) + 2
    cdef char* buf = <char*>malloc(n)
    if buf == NULL:
        raise MemoryError()
    try:
        mpz_get_str(buf, 16, src)
        return int(buf.decode("ascii"), 16)
    finally:
        free(buf)


cdef class _State:
    cdef mpz_t p1, p0, q1, q0, b, g, tmp

    def __cinit__(self):
        mpz_init(self.p1); mpz_init(self.p0); mpz_init(self.q1); mpz_init(self.q0)
        mpz_init(self.b); mpz_init(self.g); mpz_init(self.tmp)

    def __dealloc__(self):
        mpz_clear(self.p1); mpz_clear(self.p0); mpz_clear(self.q1); mpz_clear(self.q0)
        mpz_clear(self.b); mpz_clear(self.g); mpz_clear(self.tmp)

    cdef void step(self):
        # P_new = b*P0 + g*P1, then shift
        mpz_mul(self.tmp, self.b, self.p0)
        mpz_addmul(self.tmp, self.g, self.p1)
        mpz_swap(self.p1, self.p0)
        mpz_swap(self.p0, self.tmp)
        mpz_mul(self.tmp, self.b, self.q0)
        mpz_addmul(self.tmp, self.g, self.q1)
        mpz_swap(self.q1, self.q0)
        mpz_swap(self.q0, self.tmp)


cdef _State _start(state):
    cdef _State st = _State()
    _load(st.p1, state[0]); _load(st.p0, state[1])
    _load(st.q1, state[2]); _load(st.q0, state[3])
    return st


def advance(beta, gamma, state):
    """Run the recurrence over all (beta, gamma) pairs and return the final state."""
    cdef _State st = _start(state)
    for b, g in zip(beta, gamma):
        _load(st.b, b)
        _load(st.g, g)
        st.step()
    return _dump(st.p1), _dump(st.p0), _dump(st.q1), _dump(st.q0)


def trajectory(beta, gamma, state):
    """Like advance, but also return every intermediate (P, Q) pair."""
    cdef _State st = _start(state)
    out = []
    for b, g in zip(beta, gamma):
        _load(st.b, b)
        _load(st.g, g)
        st.step()
        out.append((_dump(st.p0), _dump(st.q0)))
    return (_dump(st.p1), _dump(st.p0), _dump(st.q1), _dump(st.q0)), out
