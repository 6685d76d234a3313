"""Small helpers for Python-int bitsets."""


def iter_bits(x):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def bit_list(x):
    return list(iter_bits(x))


def from_indices(indices):
    out = 0
    for i in indices:
        out |= 1 << i
    return out


def popcount(x):
    return bin(x).count("1")
