import math

import pytest

import segwt

SEGS = [(1, 5, 3), (2, 7, 1), (3, 6, 4), (4, 8, 2)]


def indexes(inst):
    yield segwt.BinaryIndex(inst)
    for backend in ("wavelet", "block"):
        for delta in (2, 3, 5):
            yield segwt.DeltaIndex(inst, delta=delta, backend=backend)


def test_instance_round_trip():
    inst = segwt.Instance(SEGS)
    assert inst.n == 4
    assert inst.segments() == sorted(SEGS, key=lambda s: s[2])


def test_invalid_instance():
    with pytest.raises(segwt.ValidationError) as info:
        segwt.Instance([(1, 3, 1), (1, 4, 2)])
    assert info.value.coordinate == 1


@pytest.mark.parametrize("seed", [1, 2])
def test_queries_match_oracle(seed):
    inst = segwt.random_instance(40, seed)
    for idx in indexes(inst):
        for y in range(1, 41):
            assert idx.access(y) == segwt.oracle_access(inst, y)
        for i in range(1, 81):
            count = segwt.oracle_crossing_count(inst, i)
            assert idx.crossing_count(i) == count
            for j in range(1, count + 1):
                assert idx.select(i, j) == segwt.oracle_select(inst, i, j)
            for y in range(1, 41, 7):
                assert idx.rank(i, y) == segwt.oracle_rank(inst, i, y)


def test_errors():
    inst = segwt.Instance(SEGS)
    for idx in indexes(inst):
        with pytest.raises(segwt.RangeError):
            idx.access(5)
        with pytest.raises(segwt.RangeError):
            idx.rank(0, 1)
        with pytest.raises(segwt.NotFoundError) as info:
            idx.select(8, 1)
        assert info.value.available == 0
        assert isinstance(info.value, segwt.Error)


def test_node_visits_binary():
    inst = segwt.random_instance(100, 3)
    idx = segwt.BinaryIndex(inst)
    assert idx.node_visits("access", 17) == math.ceil(math.log2(100)) + 1
    with pytest.raises(ValueError):
        idx.node_visits("count", 1)


def test_space_and_serialization(tmp_path):
    inst = segwt.random_instance(256, 4)
    for idx in indexes(inst):
        space = idx.space()
        assert space["total_bits"] == space["payload_bits"] + space["overhead_bits"]
        assert space["ratio"] > 0.5
        data = idx.to_bytes()
        assert segwt.load_bytes(data) == idx
        path = tmp_path / "idx.swtx"
        idx.save(str(path))
        assert segwt.load(str(path)) == idx
        corrupt = bytearray(data)
        corrupt[len(corrupt) // 2] ^= 0xFF
        with pytest.raises(segwt.FormatError):
            segwt.load_bytes(bytes(corrupt))
    with pytest.raises(segwt.IoError):
        segwt.load(str(tmp_path / "missing.swtx"))


def test_reduce():
    inst, xs, ys = segwt.reduce([(0.5, 2.0, 10.0), (1.0, 3.5, -1.0)])
    assert inst.segments() == [(2, 4, 1), (1, 3, 2)]
    assert xs == [0.5, 1.0, 2.0, 3.5]
    assert ys == [-1.0, 10.0]
    with pytest.raises(segwt.TieError):
        segwt.reduce([(0.0, 1.0, 1.0), (1.0, 2.0, 2.0)])
    inst, _, _ = segwt.reduce([(0.0, 1.0, 1.0), (1.0, 2.0, 2.0)], strict=False)
    assert inst.n == 2


def test_enumeration_counts():
    for n in range(1, 4):
        assert segwt.count_instances(n) == segwt.expected_instance_count(n)
    assert segwt.expected_instance_count(3) == math.factorial(6) // 8
    with pytest.raises(segwt.LimitError):
        segwt.count_instances(7)
