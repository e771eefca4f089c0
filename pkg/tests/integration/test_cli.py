import json

import pytest

from torus_reduction.utils import SCHEMA_VERSION

from .conftest import read_document


def test_pair(pair_runner):
    document = pair_runner.document("s2", "--space", "s2", "--at", "1/3")
    assert document["schema"] == SCHEMA_VERSION
    assert document["xi"] == [1]
    result = document["results"][0]
    assert result["command"] == "pair"
    assert result["value"] == "1"
    assert result["per_point"] == {"N": "0", "S": "1"}


def test_pair_half_square(pair_runner):
    document = pair_runner.document(
        "cp2xcp2", "--space", "cp2xcp2", "--class", "half-square", "--at", "0,0"
    )
    result = document["results"][0]
    assert result["value"] == "3"
    assert result["per_point"]["S,S"] == "4"
    assert result["per_point"]["S,E"] == result["per_point"]["E,S"] == "-1/2"
    assert result["t"] == ["0", "0"]
    assert document["xi"] == [1, 2]


def test_pair_with_xi(pair_runner):
    document = pair_runner.document(
        "cp2xcp2", "--space", "cp2xcp2", "--class", "half-square", "--at", "0,0", "--xi", "1,3"
    )
    assert document["xi"] == [1, 3]
    assert document["results"][0]["value"] == "3"


def test_pair_of_a_product(pair_runner):
    cmd = ("s2", "--product-of", "s2,s2", "--classes", "1,1", "--at", "1/2")
    direct = pair_runner.document(*cmd)
    convolved = pair_runner.document(*cmd, "--via-convolution")
    assert direct["results"][0]["value"] == convolved["results"][0]["value"] == "3/2"
    assert direct["results"][0]["product_of"] == ["s2", "s2"]


def test_output_is_deterministic(pair_runner):
    cmd = ("cp2xcp2", "-v", "ERROR", "--space", "cp2xcp2", "--class", "half-square", "--at", "0,0")
    first = pair_runner.invoke(*cmd).output
    second = pair_runner.invoke(*cmd).output
    assert first == second
    assert json.loads(first) == read_document(first)


def test_non_regular_value(pair_runner):
    result = pair_runner.invoke("s2", "--space", "s2", "--at", "1", exit_code=2)
    witness = read_document(result.output)["results"][-1]
    assert witness["error"] == "non-regular value"
    assert witness["t"] == ["1"]
    assert witness["atom"]["apex"] == ["1"]
    assert "not a regular value" in witness["message"]


@pytest.mark.parametrize(
    "cmd",
    [
        ("no-such-document", "--space", "s2", "--at", "0"),
        ("s2", "--space", "t2", "--at", "0"),
        ("s2", "--space", "s2", "--class", "omega", "--at", "0"),
        ("s2", "--space", "s2", "--at", "0", "--xi", "a"),
        ("cp2", "--space", "cp2", "--at", "0,0", "--xi", "1,1"),
        ("cp2", "--space", "cp2", "--at", "0"),
        ("s2", "--product-of", "s2,s2", "--classes", "1", "--at", "0"),
    ],
)
def test_input_errors(pair_runner, cmd):
    result = pair_runner.invoke(*cmd, exit_code=1)
    assert "ERROR:" in result.output


def test_volume(volume_runner):
    document = volume_runner.document("linear", "--space", "c3", "--near", "1")
    result = document["results"][0]
    assert result["polynomial"] == "t^2/2"
    assert result["degree_bound"] == 2
    assert result["variables"] == ["t"]


@pytest.mark.parametrize(
    "doc,space,near,expected",
    [
        ("linear", "c2_12", "1", "t/2"),
        ("s2", "s2", "0", "1"),
        ("cp2", "cp2", "0,0", "1"),
        ("cp2", "cp2", "-1,-2", "0"),
        ("cp2xcp2", "cp2xcp2", "0,0", "-t1^2 - t1*t2 - t2^2 + 3"),
    ],
)
def test_volume_polynomials(volume_runner, doc, space, near, expected):
    document = volume_runner.document(doc, "--space", space, "--near", near)
    assert document["results"][0]["polynomial"] == expected


def test_volume_on_a_wall(volume_runner):
    volume_runner.invoke("s2", "--space", "s2", "--near", "1", exit_code=2)


def test_pushforward(pushforward_runner):
    document = pushforward_runner.document("s2", "--space", "s2")
    terms = document["results"][0]["terms"]
    assert [term["point"] for term in terms] == ["N", "S"]
    assert [term["sign"] for term in terms] == [-1, 1]
    assert "atoms" not in document["results"][0]


def test_pushforward_decompose(pushforward_runner):
    document = pushforward_runner.document(
        "cp2xcp2", "--space", "cp2xcp2", "--class", "half-square", "--decompose"
    )
    result = document["results"][0]
    assert len(result["terms"]) == 9
    # 2 (u1 + u2)^2 / (u1^2 u2^2) keeps only 4 / (u1 u2).
    (atom,) = result["atoms"]["S,S"]
    assert atom["coeff"] == "4"
    assert atom["mults"] == [1, 1]
    assert result["discarded"]["S,S"] == {"lower_dim": 2, "point_supported": 0}


def test_check_polarization(check_runner):
    document = check_runner.document(
        "cp2xcp2",
        "--what",
        "polarization",
        "--space",
        "cp2xcp2",
        "--class",
        "half-square",
        "--at",
        "0,0",
        "--at",
        "1/2,1/3",
    )
    result = document["results"][0]
    assert result["pass"] is True
    assert set(result["values"]) == {"1,2", "-1,-2", "1,3"}
    assert result["values"]["1,2"][0] == "3"


def test_check_polarization_with_xis(check_runner):
    document = check_runner.document(
        "s2", "--what", "polarization", "--space", "s2", "--at", "0", "--xi", "1", "--xi", "-2"
    )
    assert set(document["results"][0]["values"]) == {"1", "-2"}


def test_check_convolution(check_runner):
    document = check_runner.document(
        "s2",
        "--what",
        "convolution",
        "--product-of",
        "s2,s2",
        "--classes",
        "1,nu",
        "--at",
        "1/2",
        "--at",
        "-1/3",
    )
    assert document["results"][0]["pass"] is True


def test_check_convolution_of_a_declared_product(check_runner):
    document = check_runner.document(
        "s2", "--what", "convolution", "--space", "s2_squared", "--classes", "1,1", "--at", "1/2"
    )
    assert document["results"][0]["values"]["direct"] == ["3/2"]


def test_check_cobordism(check_runner):
    document = check_runner.document(
        "cp2xcp2", "--what", "cobordism", "--space", "cp2xcp2", "--class", "half-square"
    )
    result = document["results"][0]
    assert result["pass"] is True
    assert result["reports"][0]["total"] == "3"


def test_check_derivative(check_runner):
    document = check_runner.document(
        "linear", "--what", "derivative", "--space", "c2_11", "--at", "1"
    )
    result = document["results"][0]
    assert result["pass"] is True
    assert result["sigma"] == 1
    assert result["derivative"] == "1"


def test_check_unknown_property(check_runner):
    result = check_runner.invoke("s2", "--what", "smoothness", "--space", "s2", exit_code=2)
    assert "smoothness" in result.output


def test_oracle_triangulation(oracle_runner):
    document = oracle_runner.document("linear", "--space", "c3", "--at", "4")
    result = document["results"][0]
    assert result["method"] == "triangulation"
    assert result["engine_value"] == result["oracle_value"] == "8"
    assert result["pass"] is True


def test_oracle_enumeration(oracle_runner):
    document = oracle_runner.document(
        "s2", "--method", "enumeration", "--space", "s2_cubed", "--class", "nu*nu*1", "--at", "0"
    )
    assert document["results"][0]["oracle_value"] == "-2"


def test_oracle_closed_form(oracle_runner):
    document = oracle_runner.document(
        "s2",
        "--method",
        "closed_form",
        "--space",
        "s2_cubed",
        "--class",
        "nu2*1*1",
        "--exponents",
        "2,0,0",
    )
    result = document["results"][0]
    assert result["engine_value"] == result["oracle_value"] == "2"


def test_oracle_grid_convolution(oracle_runner):
    document = oracle_runner.document(
        "s2",
        "--method",
        "grid_convolution",
        "--product-of",
        "s2,s2",
        "--classes",
        "1,1",
        "--at",
        "1/2",
    )
    result = document["results"][0]
    assert result["engine_value"] == "3/2"
    assert isinstance(result["oracle_value"], float)
    assert result["pass"] is True


def test_failing_oracle_exits_with_three(oracle_runner):
    # Three midpoints on (-1, 1) undercount the convolution of two unit boxes.
    result = oracle_runner.invoke(
        "s2",
        "--method",
        "grid_convolution",
        "--product-of",
        "s2,s2",
        "--classes",
        "1,1",
        "--at",
        "1/2",
        "--step",
        "2/3",
        exit_code=3,
    )
    assert read_document(result.output)["results"][0]["pass"] is False


def test_oracle_rejects_compact_fibers(oracle_runner):
    oracle_runner.invoke("s2", "--space", "s2", "--at", "0", exit_code=1)


@pytest.mark.parametrize(
    "doc,values",
    [
        ("s2", ["1", None, "-2", "2"]),
        ("cp2", ["1", None]),
        ("cp2xcp2", ["3", None]),
        ("linear", ["8", None, None, None]),
    ],
)
def test_run_bundled_documents(run_runner, doc, values):
    results = run_runner.document(doc)["results"]
    assert len(results) == len(values)
    for result, value in zip(results, values):
        if value is not None:
            assert result["value"] == value

        assert result.get("pass", True) is True


def write_document(path, query, classes=()):
    raw = {
        "schema": SCHEMA_VERSION,
        "rank": 1,
        "spaces": [
            {
                "name": "c2",
                "kind": "linear",
                "points": [{"id": "0", "moment": ["0"], "weights": [[1], [1]]}],
            }
        ],
        "classes": list(classes),
        "queries": [query],
    }
    path.write_text(json.dumps(raw))
    return str(path)


def test_run_document_from_a_path(run_runner, tmp_path):
    path = write_document(tmp_path / "doc.json", {"command": "pair", "space": "c2", "at": "3"})
    assert run_runner.document(path)["results"][0]["value"] == "3"


def test_run_rejects_bad_query_options(run_runner, tmp_path):
    path = write_document(tmp_path / "doc.json", {"command": "pair", "space": "c2", "near": "3"})
    result = run_runner.invoke(path, exit_code=1)
    assert "Bad options" in result.output


def test_run_rejects_scalar_exponents(run_runner, tmp_path):
    bad = {"name": "bad", "space": "c2", "restrictions": {"0": [{"exps": 1, "coeff": 1}]}}
    query = {"command": "pair", "space": "c2", "class": "bad", "at": "3"}
    path = write_document(tmp_path / "doc.json", query, classes=[bad])
    result = run_runner.invoke(path, exit_code=1)
    assert "Exponents must be a list" in result.output
