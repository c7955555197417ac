import pytest

from gammapres.io import (SchemaError, cover_from_json, gamma_group_from_json, group_from_json,
                          local_data_from_json, module_from_json, variety_from_json)


@pytest.mark.parametrize("d, order", [
    ({"named": "cyclic", "args": [5]}, 5), ({"named": "quaternion"}, 8),
    ({"named": "dihedral", "args": [4]}, 8), ({"permutations": [[1, 2, 0], [1, 0, 2]]}, 6),
    ({"table": [[0, 1], [1, 0]]}, 2),
])
def test_groups(d, order):
    assert group_from_json(d).order == order


@pytest.mark.parametrize("d", [[], {"named": "nope"}, {"table": [[0, 1], [0, 1]]}, {"other": 1},
                               {"named": "cyclic", "args": ["x"]}])
def test_group_schema_errors(d):
    with pytest.raises(SchemaError):
        group_from_json(d)


def test_gamma_group_and_module():
    h = gamma_group_from_json({"group": {"named": "cyclic", "args": [3]},
                               "gamma": {"named": "cyclic", "args": [2]}, "action": [[0, 2, 1]]})
    assert h.g.order == 3 and h.gamma.order == 2
    m = module_from_json({"prime": 3, "character": [1, 2]}, h.semidirect.group)
    assert m.dim == 1
    with pytest.raises(SchemaError):
        module_from_json({"prime": 3, "character": [1]}, h.semidirect.group)
    with pytest.raises(SchemaError):
        gamma_group_from_json({"group": {"named": "cyclic", "args": [3]},
                               "gamma": {"named": "cyclic", "args": [2]}, "action": [[1, 0, 2]]})


def test_variety_cover_local_data():
    c = variety_from_json({"members": [{"group": {"named": "symmetric", "args": [3]}}],
                           "product_order_bound": 100})
    assert c.product_order_bound == 100
    with pytest.raises(SchemaError):
        variety_from_json({"members": []})
    with pytest.raises(SchemaError):
        cover_from_json({"source": {"group": {"named": "cyclic", "args": [2]}},
                         "target": {"group": {"named": "cyclic", "args": [3]}}, "map": [0, 1]})
    assert local_data_from_json({"ell": 3, "dim_a": 1}).ell == 3
    with pytest.raises(SchemaError):
        local_data_from_json({"ell": 3, "dim_a": 1, "typo": 2})
