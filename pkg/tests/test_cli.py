import json
import re

import pytest

from ppfun.catalogue import named_group
from ppfun.cli import main
from ppfun.ddelta import DDeltaPair, enumerate_ddelta_pairs, identity_aut
from ppfun.errors import ParseError, UnknownName
from ppfun.functors import OutRepW
from ppfun.homs import is_isomorphic
from ppfun.parsing import format_W, load_group, parse_automorphism, parse_group_text, parse_W_text


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# ---------------------------------------------------------------------------
# parsing

def test_group_file(tmp_path):
    f = tmp_path / "s3.grp"
    f.write_text("# the symmetric group on three points\ndegree 3\ngen (1 2 3)\ngen (1 2)\n")
    assert load_group(str(f)).order == 6


def test_group_file_errors():
    with pytest.raises(ParseError):
        parse_group_text("gen (1 2)\n")
    with pytest.raises(ParseError):
        parse_group_text("degree 3\nfrobnicate\n")
    with pytest.raises(UnknownName):
        load_group("no/such/file.grp")


def test_group_file_name_and_semidirect(tmp_path):
    assert parse_group_text("name A4\n").order == 12
    pr = next(x for x in enumerate_ddelta_pairs(2, 4) if x.u_order == 3)
    auto = ",".join(map(str, pr.u.images))
    G = parse_group_text(f"semidirect base=V4 auto={auto}\n")
    assert is_isomorphic(G, named_group("A4"))
    (tmp_path / "base.grp").write_text("degree 4\ngen (1 2)(3 4)\ngen (1 3)(2 4)\n")
    (tmp_path / "a4.grp").write_text(f"semidirect base=base.grp auto={auto}\n")
    assert load_group(str(tmp_path / "a4.grp")).order == 12


def test_automorphism_spec():
    V4 = named_group("V4")
    assert parse_automorphism("identity", V4).images == (0, 1, 2, 3)
    with pytest.raises(ParseError):
        parse_automorphism("0,1,1,3", V4)
    with pytest.raises(ParseError):
        parse_automorphism("a,b", V4)
    C4 = named_group("C4")
    bad = [0, 2, 1, 3] if C4.element_orders[1] == 4 else [0, 1, 3, 2]
    with pytest.raises(ParseError):
        parse_automorphism(",".join(map(str, bad)), C4)


def test_w_round_trip():
    V4 = named_group("V4")
    pr = DDeltaPair(V4, identity_aut(V4), 2)
    W = OutRepW.natural(pr)
    text = format_W(W)
    W2 = parse_W_text(text, pr)
    assert all((W2.matrices[k] == W.matrices[k]).all() for k in W.matrices)


def test_w_errors():
    V4 = named_group("V4")
    pr = DDeltaPair(V4, identity_aut(V4), 2)
    with pytest.raises(ParseError):
        parse_W_text("field 3 1\ndim 1\nmat g1 1\nmat g2 1\n", pr)
    with pytest.raises(ParseError):
        parse_W_text("field 2 1\ndim 1\nmat g1 1\n", pr)
    # a singular matrix cannot represent a group element
    with pytest.raises(ParseError):
        parse_W_text("field 2 1\ndim 2\nmat g1 1 0 0 0\nmat g2 1 0 0 0\n", pr)


# ---------------------------------------------------------------------------
# command line

def test_simple_dim_prints_both_routes(capsys):
    code, out, _ = run(capsys, "simple-dim", "--group", "A4", "--p", "2", "--L", "V4")
    assert code == 0
    assert "dim S_{V4,1,k}(A4) = 1" in out
    assert "trace 1" in out and "class_count 1" in out


def test_essential_c2(capsys):
    code, out, _ = run(capsys, "essential", "--group", "C2", "--p", "2", "--format", "json")
    assert code == 0 and json.loads(out)["results"]["dimension"] == 1


def test_cartan_json(capsys):
    code, out, _ = run(capsys, "cartan", "--group", "S3", "--p", "3", "--format", "json")
    env = json.loads(out)
    assert code == 0
    assert env["schema_version"] == 1 and env["command"] == "cartan"
    assert set(env) == {"schema_version", "command", "inputs", "results", "warnings", "timing_ms"}
    r = env["results"]
    assert r["cartan"] == [[2, 1], [1, 2]] and r["snf"] == [1, 3] and r["defect_zero"] == 1
    assert env["timing_ms"] is None


def test_timing_flag(capsys):
    _, out, _ = run(capsys, "cartan", "--group", "S3", "--p", "3", "--format", "json", "--timing")
    assert json.loads(out)["timing_ms"] >= 0


def _ints(obj):
    if isinstance(obj, bool):
        return set()
    if isinstance(obj, int):
        return {obj}
    if isinstance(obj, dict):
        return set().union(*(_ints(v) for v in obj.values())) if obj else set()
    if isinstance(obj, list):
        return set().union(*(_ints(v) for v in obj)) if obj else set()
    return set()


@pytest.mark.parametrize("argv", [
    ["cartan", "--group", "A4", "--p", "2"],
    ["simple-dim", "--group", "S4", "--p", "2", "--L", "D8"],
    ["defects", "--group", "A5", "--p", "2"],
    ["ddelta", "--p", "2", "--max-order", "4"],
    ["pset", "--group", "S4", "--p", "2", "--L", "C2"],
    ["classes", "--group", "S4", "--p", "2"],
    ["essential", "--group", "A4", "--p", "2"],
])
def test_table_and_json_carry_the_same_numbers(capsys, argv):
    _, table, _ = run(capsys, *argv)
    _, js, _ = run(capsys, *argv, "--format", "json")
    numbers_in_table = {int(x) for x in re.findall(r"-?\d+", table)}
    assert _ints(json.loads(js)["results"]) <= numbers_in_table


def test_json_is_deterministic(capsys):
    _, a, _ = run(capsys, "check", "--profile", "quick", "--format", "json", "--seed", "3")
    _, b, _ = run(capsys, "check", "--profile", "quick", "--format", "json", "--seed", "3")
    assert a == b


def test_check_filter(capsys):
    code, out, _ = run(capsys, "check", "--profile", "full", "--p", "3", "--format", "json")
    env = json.loads(out)
    assert code == 0 and not env["results"]["failed"]
    assert all("@3" in c["name"] for c in env["results"]["checks"])


def test_usage_errors(capsys):
    code, _, err = run(capsys, "check", "--profile", "bogus")
    assert code == 2 and "--profile" in err
    code, _, err = run(capsys, "cartan", "--group", "S3", "--p", "4")
    assert code == 2 and "--p" in err
    code, _, err = run(capsys, "cartan", "--group", "S3")
    assert code == 2 and "--p" in err
    code, _, err = run(capsys, "simple-dim", "--group", "S3", "--p", "3", "--L", "C2")
    assert code == 2 and "--L" in err
    code, _, _ = run(capsys, "nosuchcommand")
    assert code == 2
    code, out, err = run(capsys, "simple-dim", "--group", "A4", "--p", "2", "--L", "V4", "--W", "/no/such/file.w")
    assert code == 2 and out == "" and "cannot read" in err


def test_computation_errors(capsys):
    code, out, err = run(capsys, "essential", "--group", "S3", "--p", "2")
    assert code == 1 and out == "" and "NoNormalSylowComplementForm" in err
    code, _, err = run(capsys, "cartan", "--group", "nosuch", "--p", "2")
    assert code == 1


def test_experimental_flag_in_both_formats(capsys):
    pr = next(x for x in enumerate_ddelta_pairs(2, 4) if x.u_order == 3)
    u = ",".join(map(str, pr.u.images))
    _, table, _ = run(capsys, "simple-dim", "--group", "A4", "--p", "2", "--L", "V4", "--u", u)
    _, js, _ = run(capsys, "simple-dim", "--group", "A4", "--p", "2", "--L", "V4", "--u", u, "--format", "json")
    assert "EXPERIMENTAL" in table
    assert any("EXPERIMENTAL" in w for w in json.loads(js)["warnings"])


def test_w_file_on_command_line(capsys, tmp_path):
    V4 = named_group("V4")
    f = tmp_path / "natural.w"
    f.write_text(format_W(OutRepW.natural(DDeltaPair(V4, identity_aut(V4), 2))))
    code, out, _ = run(capsys, "simple-dim", "--group", "A4", "--p", "2", "--L", "V4", "--W", str(f))
    assert code == 0 and "= 0" in out.splitlines()[0]


def test_ddelta_support(capsys):
    code, out, _ = run(capsys, "ddelta", "--group", "C6", "--p", "3")
    assert code == 0 and "KNotFaithful" in out
    code, _, _ = run(capsys, "ddelta", "--p", "3")
    assert code == 2
