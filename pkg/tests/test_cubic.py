import math

from localglobal.cubic import integer_zeros, primitive_zero_mod, probe


def test_witnesses_are_primitive_zeros():
    for N in (8, 9, 27, 81, 125):
        x, y, z = primitive_zero_mod((3, 4, 5), N)
        assert (3 * x**3 + 4 * y**3 + 5 * z**3) % N == 0 and math.gcd(x, y, z, N) == 1


def test_global_search_finds_known_zeros():
    zeros = integer_zeros((1, 1, -2), 3)
    assert (1, 1, 1) in zeros and (0, 0, 0) in zeros


def test_no_local_zero_detected():
    # x^3 + 2y^3 + 4z^3 has only the trivial zero mod 8 up to scaling by 2
    assert primitive_zero_mod((1, 2, 4), 8) is None
    assert not probe((1, 2, 4), moduli=[8], bound=3).locally_solvable
