# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term-arithmetic kernel.

Same contract as linfty._kernel_py: dt-word sorting and merging with
signs, exponent addition, and coefficient-dict accumulation and
multiplication.  Coefficients stay exact Python Fractions; the speedup
comes from C-level loops and fewer interpreter dispatches in the inner
term product.
"""

IMPLEMENTATION = "cython"


def sort_word(word):
    """Sort a dt-index word, returning (sorted_word, sign).

    The sign is the parity of the sorting permutation; a repeated index
    gives sign 0.
    """
    cdef list w = list(word)
    cdef Py_ssize_t n = len(w)
    cdef Py_ssize_t i, j
    cdef int sign = 1
    cdef object tmp
    for i in range(1, n):
        j = i
        while j > 0 and <long> w[j - 1] > <long> w[j]:
            tmp = w[j - 1]
            w[j - 1] = w[j]
            w[j] = tmp
            sign = -sign
            j -= 1
        if j > 0 and <long> w[j - 1] == <long> w[j]:
            return (), 0
    return tuple(w), sign


def merge_words(w1, w2):
    """Merge two sorted dt-words, returning (merged, sign); ((), 0) on
    overlap."""
    cdef Py_ssize_t n1 = len(w1), n2 = len(w2)
    if n1 == 0:
        return w2, 1
    if n2 == 0:
        return w1, 1
    cdef list merged = []
    cdef int sign = 1
    cdef Py_ssize_t i = 0, j = 0
    cdef long a, b
    while i < n1 and j < n2:
        a = <long> w1[i]
        b = <long> w2[j]
        if a == b:
            return (), 0
        if a < b:
            merged.append(w1[i])
            i += 1
        else:
            merged.append(w2[j])
            j += 1
            if (n1 - i) & 1:
                sign = -sign
    while i < n1:
        merged.append(w1[i])
        i += 1
    while j < n2:
        merged.append(w2[j])
        j += 1
    return tuple(merged), sign


def add_exps(e1, e2):
    """Componentwise sum of two exponent tuples."""
    cdef Py_ssize_t n = len(e1)
    cdef list out = [0] * n
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = (<long> e1[i]) + (<long> e2[i])
    return tuple(out)


def add_into(dst, src, scale):
    """In-place dst += scale * src, dropping zero coefficients."""
    if not scale:
        return dst
    cdef object key, coeff, acc
    for key, coeff in src.items():
        acc = dst.get(key)
        if acc is None:
            dst[key] = scale * coeff
        else:
            acc = acc + scale * coeff
            if acc:
                dst[key] = acc
            else:
                del dst[key]
    return dst


def scale_terms(terms, scale):
    """Return a new term dict equal to scale * terms."""
    if not scale:
        return {}
    cdef dict out = {}
    cdef object key, coeff
    for key, coeff in terms.items():
        out[key] = scale * coeff
    return out


def mul_terms(a, b):
    """Graded product of two term dicts over the same n."""
    cdef dict out = {}
    cdef list b_items = list(b.items())
    cdef object key1, key2, c1, c2, e1, w1, e2, w2, coeff, acc, word
    cdef tuple merged_key
    cdef Py_ssize_t idx, nb = len(b_items)
    cdef int sign
    for key1, c1 in a.items():
        e1 = key1[0]
        w1 = key1[1]
        for idx in range(nb):
            key2 = b_items[idx][0]
            c2 = b_items[idx][1]
            w2 = key2[1]
            word, sign = merge_words(w1, w2)
            if sign == 0:
                continue
            e2 = key2[0]
            merged_key = (add_exps(e1, e2), word)
            coeff = c1 * c2
            if sign < 0:
                coeff = -coeff
            acc = out.get(merged_key)
            if acc is None:
                out[merged_key] = coeff
            else:
                acc = acc + coeff
                if acc:
                    out[merged_key] = acc
                else:
                    del out[merged_key]
    return out
