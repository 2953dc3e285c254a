import pytest

from gencomm import builtins as B
from gencomm.errors import NonAssociative, ParseError
from gencomm.ring import make_ring
from gencomm.ringfile import dump_ring, load_ring, parse_ring_text

GOOD = """\
# two by two matrices over GF(2)
name: M2(GF2)
dim: 4
modulus: 2
labels: e11 e12 e21 e22
unity: 1 0 0 1
products:
  1 1 -> 1:1
  1 2 -> 2:1
  2 3 -> 1:1
  2 4 -> 2:1
  3 1 -> 3:1
  3 2 -> 4:1
  4 3 -> 3:1
  4 4 -> 4:1
"""


def test_parse_good_file_matches_builtin():
    r = make_ring(parse_ring_text(GOOD))
    ref = B.NAMED["M2_GF2"]()
    assert r.table == ref.table and r.unity == ref.unity and r.labels == ref.labels


@pytest.mark.parametrize("name", sorted(B.NAMED))
def test_round_trip(name):
    r = B.NAMED[name]()
    back = make_ring(parse_ring_text(dump_ring(r)))
    assert (back.name, back.dim, back.modulus) == (r.name, r.dim, r.modulus)
    assert back.table == r.table
    assert back.labels == r.labels and back.scales == r.scales and back.unity == r.unity
    assert dump_ring(back) == dump_ring(r)


@pytest.mark.parametrize(
    "mutation, message",
    [
        (lambda t: t.replace("dim: 4\n", ""), "missing field"),
        (lambda t: t.replace("1 1 -> 1:1", "1 5 -> 1:1"), "out of range"),
        (lambda t: t.replace("1 1 -> 1:1", "1 1 -> 1:3"), "canonical residue"),
        (lambda t: t + "  1 1 -> 1:1\n", "given twice"),
        (lambda t: t.replace("2 3 -> 1:1", "2 3 -> 1:1 1:1"), "repeated"),
        (lambda t: t.replace("2 3 -> 1:1", "2 3 -> 1"), "k:c"),
        (lambda t: t.replace("name: M2(GF2)", "name: M2(GF2)\nname: again"), "duplicate"),
        (lambda t: t.replace("modulus: 2", "modulus: two"), "integer"),
        (lambda t: t.replace("unity: 1 0 0 1", "unity: 1 0 1"), "unity"),
        (lambda t: t.replace("labels: e11 e12 e21 e22", "labels: a b"), "labels"),
        (lambda t: t.replace("products:", "stray words\nproducts:"), "unexpected"),
    ],
)
def test_rejections(mutation, message):
    with pytest.raises(ParseError, match=message):
        make_ring(parse_ring_text(mutation(GOOD)))


def test_nonassociative_file(tmp_path):
    p = tmp_path / "bad.ring"
    p.write_text("name: bad\ndim: 2\nmodulus: 0\nlabels: a b\nproducts:\n1 2 -> 1:1\n")
    with pytest.raises(NonAssociative) as info:
        load_ring(p)
    assert info.value.triple == (0, 1, 1)


def test_missing_file(tmp_path):
    with pytest.raises(ParseError, match="cannot read"):
        load_ring(tmp_path / "absent.ring")
