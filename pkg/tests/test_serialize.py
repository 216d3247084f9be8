import json

import pytest

from gradedleibniz.catalog import by_name, catalog_names
from gradedleibniz.iso import BasisChange
from gradedleibniz.serialize import (LawFormatError, dumps_law, law_from_json, law_to_json,
                                     loads_law, witness_from_json, witness_to_json)


@pytest.mark.parametrize("name", catalog_names(12))
def test_catalog_json_round_trip(name):
    law = by_name(name)
    back = loads_law(dumps_law(law))
    assert back == law and back.labels == law.labels and back.name == law.name


def test_scalars_are_strings():
    data = law_to_json(by_name("Lalpha(1/2+i,1)"))
    values = [v for p in data["products"] for v in p["value"].values()]
    assert all(isinstance(v, str) for v in values)
    assert "1/2+i" in values


def test_default_basis_and_integer_scalars():
    law = law_from_json({"dim": 2, "products": [{"left": "e1", "right": "e1", "value": {"e2": 1}}]})
    assert law.product(0, 0)[1] == 1


@pytest.mark.parametrize("data,where", [
    ([], "$"),
    ({"dim": -1}, "$.dim"),
    ({"dim": 2, "basis": ["a"]}, "$.basis"),
    ({"dim": 2, "basis": ["a", "a"]}, "$.basis"),
    ({"dim": 2, "products": {}}, "$.products"),
    ({"dim": 2, "products": [{"left": "e1", "right": "e9", "value": {}}]}, "$.products[0]"),
    ({"dim": 2, "products": [{"left": "e1", "right": "e1", "value": {"e3": "1"}}]},
     "$.products[0].value"),
    ({"dim": 2, "products": [{"left": "e1", "right": "e1", "value": {"e2": "x"}}]},
     "$.products[0].value.e2"),
    ({"dim": 2, "products": [{"left": "e1", "right": "e1", "value": {"e2": 0.5}}]},
     "$.products[0].value.e2"),
    ({"dim": 2, "products": [{"left": "e1", "right": "e1", "value": {"e2": "1"}},
                             {"left": "e1", "right": "e1", "value": {"e2": "2"}}]},
     "$.products[1]"),
])
def test_malformed_laws_name_the_element(data, where):
    with pytest.raises(LawFormatError) as exc:
        law_from_json(data)
    assert exc.value.where == where


def test_bad_json_text():
    with pytest.raises(LawFormatError) as exc:
        loads_law('{"dim": 2,,}')
    assert "line 1" in str(exc.value)


def test_witness_round_trip():
    P = BasisChange([[1, "i"], [0, "1/2"]])
    assert witness_from_json(json.loads(json.dumps(witness_to_json(P)))) == P
    with pytest.raises(LawFormatError):
        witness_from_json({"matrix": [[1, 2]]})
    with pytest.raises(LawFormatError):
        witness_from_json([[1]])
