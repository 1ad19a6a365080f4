"""Pure-Python term-arithmetic kernel.

A differential-form term is a pair ``(exps, word)`` where ``exps`` is a
tuple of exponents for t_1..t_n and ``word`` is a strictly increasing
tuple of dt-indices.  A form is a dict mapping such pairs to nonzero
Fraction coefficients.  These helpers are the inner loops of every
operator in the package; linfty._kernel is the compiled twin with the
same signatures.
"""

IMPLEMENTATION = "python"


def sort_word(word):
    """Sort a dt-index word, returning (sorted_word, sign).

    The sign is the parity of the sorting permutation; a repeated index
    gives sign 0 (odd generators square to zero).
    """
    w = list(word)
    sign = 1
    for i in range(1, len(w)):
        j = i
        while j > 0 and w[j - 1] > w[j]:
            w[j - 1], w[j] = w[j], w[j - 1]
            sign = -sign
            j -= 1
        if j > 0 and w[j - 1] == w[j]:
            return (), 0
    return tuple(w), sign


def merge_words(w1, w2):
    """Merge two sorted dt-words, returning (merged, sign).

    Sign counts inversions between the blocks; overlapping words give
    ((), 0).
    """
    if not w1:
        return w2, 1
    if not w2:
        return w1, 1
    merged = []
    sign = 1
    i = j = 0
    n1, n2 = len(w1), len(w2)
    while i < n1 and j < n2:
        a, b = w1[i], w2[j]
        if a == b:
            return (), 0
        if a < b:
            merged.append(a)
            i += 1
        else:
            merged.append(b)
            j += 1
            # b jumps over the remaining n1-i letters of w1
            if (n1 - i) & 1:
                sign = -sign
    merged.extend(w1[i:])
    merged.extend(w2[j:])
    return tuple(merged), sign


def add_exps(e1, e2):
    """Componentwise sum of two exponent tuples."""
    return tuple(a + b for a, b in zip(e1, e2))


def add_into(dst, src, scale):
    """In-place dst += scale * src, dropping zero coefficients."""
    if not scale:
        return dst
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
    return {key: scale * coeff for key, coeff in terms.items()}


def mul_terms(a, b):
    """Graded product of two term dicts over the same n."""
    out = {}
    for (e1, w1), c1 in a.items():
        for (e2, w2), c2 in b.items():
            word, sign = merge_words(w1, w2)
            if sign == 0:
                continue
            key = (add_exps(e1, e2), word)
            coeff = c1 * c2 if sign > 0 else -(c1 * c2)
            acc = out.get(key)
            if acc is None:
                out[key] = coeff
            else:
                acc = acc + coeff
                if acc:
                    out[key] = acc
                else:
                    del out[key]
    return out
