import math

from quartdiff.witness import Witness, find_witness, verify_witness


def test_find_witness_table_values():
    assert find_witness(5, 10) == Witness(3, 1, 2)
    assert find_witness(239, 150) == Witness(120, 119, 13)
    assert find_witness(9999, 15) == Witness(10, 1, 1)


def test_find_witness_none_in_range():
    # Fermat: 1 is not a difference of nonzero fourth powers at any height
    assert find_witness(1, 300) is None
    assert find_witness(2, 60) is None


def test_verify_witness():
    assert verify_witness(5, Witness(3, 1, 2))
    assert not verify_witness(5, Witness(3, 2, 2))  # 81 - 16 = 65 != 80
    assert verify_witness(9999, Witness(10, 1, 1))
    assert not verify_witness(5, Witness(-3, 1, 2))
    assert not verify_witness(5, Witness(6, 2, 4))  # not primitive


def test_minimal_z_then_y_order():
    # n = 2400 = 7^4 - 1^4; also (14, 2, 2) scaled is not primitive,
    # so the first hit must be z = 1
    w = find_witness(2400, 20)
    assert w == Witness(7, 1, 1)
    # n = 5 has no z = 1 witness below the bound, z = 2 is minimal
    w = find_witness(5, 50)
    assert w.z == 2 and w.y == 1


def test_found_implies_verified():
    for n in (15, 34, 39, 65, 80, 84):
        w = find_witness(n, 60)
        assert w is not None and verify_witness(n, w)
        assert math.gcd(math.gcd(w.x, w.y), w.z) == 1
