import pytest

from trisectlab.algebra import Word
from trisectlab.surface import (
    CORNER_WHISKER,
    CurveClass,
    SurfaceModel,
    abelianize,
    euler_characteristic,
    intersection_number,
    relator_convention,
    surface_relator,
    symplectic_form,
)


def test_default_names():
    assert SurfaceModel(1, 2).generators == ("a", "b", "x", "y")
    assert SurfaceModel(2, 1).generators == ("a1", "b1", "a2", "b2", "x1")
    assert SurfaceModel(0, 3).generators == ("x1", "x2", "x3")


def test_euler_characteristic():
    assert euler_characteristic(SurfaceModel(1, 2)) == -2
    assert euler_characteristic(SurfaceModel(0, 0)) == 2
    assert euler_characteristic(SurfaceModel(3, 0)) == -4


def test_relators():
    assert str(surface_relator(SurfaceModel(1, 0))) == "a b a^-1 b^-1"
    assert str(surface_relator(SurfaceModel(2, 1))) == "a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1 x1"
    assert str(surface_relator(SurfaceModel(1, 2), CORNER_WHISKER)) == "a y b a^-1 b^-1 x^-1"
    with pytest.raises(ValueError):
        surface_relator(SurfaceModel(2, 2), CORNER_WHISKER)
    with pytest.raises(ValueError):
        surface_relator(SurfaceModel(1, 2), "other")


def test_abelianize_kills_meridians():
    m = SurfaceModel(1, 2)
    assert abelianize(m, Word.parse("y^-1 a^-1 b^-1 x^-1 b a y b")) == CurveClass((0, 1))
    assert abelianize(m, Word.parse("y^-1 b^-1 y^-1 a^-1 b^-1 x^-1 b")) == CurveClass((-1, -1))
    with pytest.raises(ValueError):
        abelianize(m, Word.parse("z"))


def test_intersection_numbers():
    a, b = CurveClass((1, 0)), CurveClass((0, 1))
    assert intersection_number(a, b) == 1
    assert intersection_number(b, a) == -1
    assert intersection_number(a + b, a + b) == 0
    with pytest.raises(ValueError):
        intersection_number(a, CurveClass((1, 0, 0, 0)))


def test_form_blocks():
    assert symplectic_form(2) == [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]


def test_model_validation():
    with pytest.raises(ValueError):
        SurfaceModel(1, 0, ("a",))
    with pytest.raises(ValueError):
        SurfaceModel(1, 1, ("a", "b"), ("a",))
    with pytest.raises(ValueError):
        CurveClass((1, 2, 3))


def test_json_round_trip():
    m = SurfaceModel(2, 1)
    assert SurfaceModel.from_json(m.to_json()) == m


def test_legacy_convention_name_is_accepted():
    assert relator_convention("paper_7_2") == CORNER_WHISKER
    with pytest.raises(ValueError):
        relator_convention("diagonal")
