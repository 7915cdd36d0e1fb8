# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled pair sweep.

See _kernels_py for the semantics contract; the two implementations are
interchangeable and compared by the test suite and the benchmark script.
"""

import numpy as np

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


def sweep_pairs(match_in, systems_in, int n):
    match_arr = np.ascontiguousarray(match_in, dtype=np.uint64).reshape(-1)
    systems_arr = np.ascontiguousarray(systems_in, dtype=np.uint64)
    cdef unsigned long long[::1] match = match_arr
    cdef unsigned long long[::1] systems = systems_arr
    out_arr = np.empty(systems_arr.shape[0], dtype=np.uint8)
    cdef unsigned char[::1] out = out_arr
    cdef Py_ssize_t i, m = systems_arr.shape[0]
    cdef unsigned long long s, ra, rb
    cdef int a, b, ok
    with nogil:
        for i in range(m):
            s = systems[i]
            ok = 1
            ra = s
            while ra != 0 and ok == 1:
                a = __builtin_ctzll(ra)
                ra = ra & (ra - 1)
                rb = s
                while rb != 0:
                    b = __builtin_ctzll(rb)
                    rb = rb & (rb - 1)
                    if (s & match[a * n + b]) == 0:
                        ok = 0
                        break
            out[i] = <unsigned char> ok
    return out_arr
