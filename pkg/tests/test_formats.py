import pytest
from hypothesis import given
from hypothesis import strategies as st

from gyrotopo.finite import cyclic_group, direct_product
from gyrotopo.formats import (
    ParseError,
    load_fixture_gyro,
    load_fixture_topo,
    parse_gyro,
    parse_subset,
    parse_table,
    parse_topo,
    read_gyro,
    serialize_gyro,
    serialize_topo,
)
from gyrotopo.topology import FiniteTopology

FIXTURES = ["g8.gyro", "z2.gyro", "z4.gyro", "s3.gyro", "k4.gyro"]


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_round_trip(name):
    G = load_fixture_gyro(name)
    again = parse_gyro(serialize_gyro(G))
    assert (again.table == G.table).all()


def test_fixture_orders():
    assert [load_fixture_gyro(f).n for f in FIXTURES] == [8, 2, 4, 6, 4]


def test_coset_topology_fixture():
    t = load_fixture_topo("g8-coset.topo", 8)
    assert t.opens() == (0, 0b1111, 0b11110000, 0xFF)


@given(st.integers(1, 6), st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), max_size=8))
def test_topo_round_trip(n, pairs):
    t = FiniteTopology.from_preorder(n, [(a % n, b % n) for a, b in pairs])
    assert parse_topo(serialize_topo(t)) == t


def test_product_round_trip():
    P = direct_product(cyclic_group(2), cyclic_group(3))
    assert (parse_gyro(serialize_gyro(P)).table == P.table).all()


def test_topo_completion_counted():
    t = parse_topo("3\n0\n1\n")
    assert t.opens() == (0, 0b001, 0b010, 0b011, 0b111)
    assert t.completion_added == 1


@pytest.mark.parametrize("text,line", [
    ("", None),
    ("x\n", 1),
    ("2\n0 1\n", 2),
    ("2\n0 1\n1 7\n", 3),
    ("2\n0 1\n1 0 1\n", 3),
])
def test_malformed_tables(text, line):
    with pytest.raises(ParseError) as err:
        parse_table(text, "t.gyro")
    assert err.value.line == line


def test_topo_carrier_mismatch():
    with pytest.raises(ParseError):
        parse_topo("3\n0\n", n_expected=8)
    with pytest.raises(ParseError):
        parse_topo("2\n5\n")


def test_comments_ignored():
    t = parse_table("# header\n2 # size\n0 1\n\n1 0  # row\n")
    assert t.tolist() == [[0, 1], [1, 0]]


def test_parse_subset():
    assert parse_subset("1,2", 8, neighbourhood=True).mask == 0b111
    assert parse_subset("1,2", 8, neighbourhood=True).added_identity
    assert parse_subset("1,2", 8).mask == 0b110
    assert parse_subset("*", 4).mask == 0b1111
    with pytest.raises(ParseError):
        parse_subset("1,9", 8)
    with pytest.raises(ParseError):
        parse_subset("a", 8)


def test_read_falls_back_to_fixture(tmp_path):
    assert read_gyro("g8.gyro").n == 8
    path = tmp_path / "z.gyro"
    path.write_text("1\n0\n")
    assert read_gyro(str(path)).n == 1
    with pytest.raises(OSError):
        read_gyro(str(tmp_path / "missing.gyro"))
