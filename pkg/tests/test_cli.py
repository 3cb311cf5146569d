import re
from importlib import resources

import pytest
from hypothesis import given

from boolcs import BoolPoly
from boolcs.anf import AnfError, format_anf, format_trisets, parse_anf, parse_stats, parse_trisets
from boolcs.cli import run

from conftest import polys


@pytest.fixture
def cli(capsys):
    def call(*argv):
        code = run([str(a) for a in argv])
        out, err = capsys.readouterr()
        return code, out, err
    return call


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_parse_anf_examples():
    doc = parse_anf("vars: 3\nx1*x3 + x2")
    assert doc.n == 3 and len(doc.polys) == 1 and doc.polys[0].cls == 3
    with pytest.raises(AnfError) as e:
        parse_anf("vars: 2\nx3 + 1")
    assert e.value.line == 2 and "out of range" in str(e.value)


def test_parse_anf_errors_carry_line_numbers():
    with pytest.raises(AnfError) as e:
        parse_anf("# c\n\nx1 + x2\n")
    assert e.value.line == 3
    with pytest.raises(AnfError) as e:
        parse_anf("vars: 3\nx1\nx2 * y\n")
    assert e.value.line == 3
    with pytest.raises(AnfError):
        parse_anf("# only a comment\n")


def test_parse_anf_comments_whitespace_duplicates():
    text = "# made by hand\nvars:4\n  x2*x1+1 \n\n# mid\n1 + x1 * x2\nx4\n"
    with pytest.warns(UserWarning, match="duplicate"):
        doc = parse_anf(text)
    assert doc.comments == ["made by hand", "mid"]
    assert [str(p) for p in doc.polys] == ["x1*x2 + 1", "x4"]


@given(polys(6))
def test_anf_round_trip(p):
    text = format_anf(6, [p])
    assert format_anf(6, parse_anf(text).polys) == text


def test_triset_file_round_trip():
    from boolcs import bcs, gen_matrix_ab
    r = bcs(gen_matrix_ab(2))
    text = format_trisets(8, r.trisets)
    n, back = parse_trisets(text)
    assert n == 8 and back == r.trisets
    with pytest.raises(AnfError):
        parse_trisets("vars: 2\nx1 + 1\n")
    with pytest.raises(AnfError):
        parse_trisets("vars: 2\n== triset 1 ==\nx1*x2 + 1\n")


def test_solve_count_matrix(cli, tmp_path):
    code, _, _ = cli("gen", "matrix", "--k", 2, "-o", tmp_path / "mat2.anf")
    assert code == 0
    code, out, _ = cli("solve", "--input", tmp_path / "mat2.anf", "--count")
    assert code == 0 and out == "solutions: 6\n"


def test_solve_contradiction(cli, tmp_path):
    f = write(tmp_path, "contradiction.anf", "vars: 2\nx1\nx1 + 1\n")
    code, out, _ = cli("solve", "--input", f, "--count")
    assert code == 0 and out == "solutions: 0\n"


def test_enumerate_sorted_and_matches_count(cli, tmp_path):
    cli("gen", "random", "--n", 8, "--m", 5, "--d", 2, "--seed", 3, "-o", tmp_path / "r.anf")
    code, out, _ = cli("solve", "--input", tmp_path / "r.anf", "--enumerate", "--count")
    lines = out.splitlines()
    bits, count = lines[:-1], int(lines[-1].split(": ")[1])
    assert bits == sorted(bits) and len(set(bits)) == len(bits) == count
    assert all(re.fullmatch("[01]{8}", b) for b in bits)


def test_solve_stats_and_tree(cli, tmp_path):
    cli("gen", "random", "--n", 9, "--m", 9, "--seed", 1, "-o", tmp_path / "r.anf")
    code, out, _ = cli("solve", "--input", tmp_path / "r.anf", "--count", "--stats", tmp_path / "s.txt",
                       "--tree", tmp_path / "t.txt")
    assert code == 0
    stats = parse_stats((tmp_path / "s.txt").read_text())
    for key in ("branches", "average_depth", "max_depth", "trisets", "solutions", "wall_seconds"):
        assert key in stats
    assert out == f"solutions: {stats['solutions']}\n"
    assert sum(int(v) for k, v in stats.items() if re.fullmatch(r"depth_\d+", k)) == int(stats["branches"])
    tree = (tmp_path / "t.txt").read_text().splitlines()
    assert tree[0] == "node 0 parent - side root depth 0"
    assert all(re.fullmatch(r"node \d+ parent \d+ side [LR] depth \d+", line) for line in tree[1:])


def test_solve_default_prints_trisets(cli, tmp_path):
    f = write(tmp_path, "a.anf", "vars: 2\nx1*x2 + 1\n")
    code, out, _ = cli("solve", "--input", f)
    assert out == "vars: 2\n== triset 1 ==\nx1 + 1\nx2 + 1\n"


def test_solve_flags_accepted(cli, tmp_path):
    cli("gen", "random", "--n", 7, "--m", 7, "--seed", 2, "-o", tmp_path / "r.anf")
    base = cli("solve", "--input", tmp_path / "r.anf", "--count")[1]
    for flags in (["--choose", "highest-class"], ["--choose", "input-order", "--threshold", "inf"],
                  ["--order", "low-first"], ["--order", "high-first", "--threshold", "1"], ["--threads", "2"],
                  ["--backend", "python", "--debug"]):
        code, out, _ = cli("solve", "--input", tmp_path / "r.anf", "--count", *flags)
        assert code == 0 and out == base


def test_predict_report(cli, tmp_path):
    cli("gen", "random", "--n", 12, "--m", 12, "--seed", 0, "-o", tmp_path / "r12.anf")
    code, out, _ = cli("predict", "--input", tmp_path / "r12.anf", "--samples", 100, "--full")
    assert code == 0
    keys = {line.split(" = ")[0] for line in out.splitlines()}
    assert {"d_a", "N_p", "N_r", "T_p_seconds", "T_r_seconds", "t_a_seconds", "N_sample"} <= keys


def test_verify(cli, tmp_path):
    cli("gen", "matrix", "--k", 2, "-o", tmp_path / "m.anf")
    code, out, _ = cli("verify", "--input", tmp_path / "m.anf", "--expect-sat")
    assert code == 0 and out.startswith("ok")
    f = write(tmp_path, "c.anf", "vars: 2\nx1\nx1 + 1\n")
    assert cli("verify", "--input", f)[0] == 0
    assert cli("verify", "--input", f, "--expect-sat")[0] == 1
    big = write(tmp_path, "big.anf", "vars: 30\nx30 + x1\n")
    code, _, err = cli("verify", "--input", big)
    assert code == 64 and "--force" in err


def test_prem_batch(cli, tmp_path):
    cli("gen", "matrix", "--k", 2, "-o", tmp_path / "ab.anf", "--with-ba", tmp_path / "ba.anf")
    cli("solve", "--input", tmp_path / "ab.anf", "--trisets", tmp_path / "t.txt", "--count")
    code, out, _ = cli("prem", "--input", tmp_path / "ba.anf", "--against", tmp_path / "t.txt")
    assert code == 0 and "nonzero = 0" in out
    other = write(tmp_path, "o.anf", "vars: 8\nx1 + 1\n")
    code, out, _ = cli("prem", "--input", other, "--against", tmp_path / "t.txt")
    assert code == 2 and "nonzero = 0" not in out


def test_gen_is_deterministic(cli, tmp_path):
    a = cli("gen", "random", "--n", 10, "--m", 10, "--d", 3, "--seed", 5)[1]
    b = cli("gen", "random", "--n", 10, "--m", 10, "--d", 3, "--seed", 5)[1]
    assert a == b and a.startswith("# random n=10 m=10 d=3 seed=5\nvars: 10\n")


def test_gen_lfsr_with_bundled_filter(cli, tmp_path):
    flt = resources.files("boolcs") / "data" / "toy_filter.anf"
    code, out, _ = cli("gen", "lfsr", "--n", 10, "--taps", 1, 4, "--filter", flt, "--len", 20, "--plant",
                       "--seed", 7, "-o", tmp_path / "l.anf")
    assert code == 0
    text = (tmp_path / "l.anf").read_text()
    secret = re.search(r"# secret: ([01]+)", text).group(1)
    code, out, _ = cli("solve", "--input", tmp_path / "l.anf", "--enumerate")
    assert secret in out.split()
    assert cli("gen", "lfsr", "--n", 10, "--taps", 2, "--filter", flt, "--len", 5)[0] == 64


def test_gen_matrix_negated(cli, tmp_path):
    cli("gen", "matrix", "--k", 2, "--negate-index", 1, "-o", tmp_path / "neg.anf")
    assert cli("solve", "--input", tmp_path / "neg.anf", "--count")[1] == "solutions: 0\n"
    assert cli("gen", "matrix", "--k", 2, "--negate-index", 9)[0] == 64


def test_exit_codes(cli, tmp_path):
    assert cli()[0] == 64
    assert cli("solve")[0] == 64
    assert cli("solve", "--input", "x.anf", "--threshold", "0")[0] == 64
    assert cli("frobnicate")[0] == 64
    assert cli("solve", "--input", tmp_path / "missing.anf")[0] == 64
    bad = write(tmp_path, "bad.anf", "vars: 2\nx3 + 1\n")
    code, _, err = cli("solve", "--input", bad)
    assert code == 65 and "line 2" in err


def test_outputs_byte_identical(cli, tmp_path):
    cli("gen", "random", "--n", 10, "--m", 10, "--seed", 4, "-o", tmp_path / "r.anf")
    outs = []
    for k in range(2):
        code, out, _ = cli("solve", "--input", tmp_path / "r.anf", "--count", "--stats", tmp_path / f"s{k}",
                           "--tree", tmp_path / f"t{k}", "--trisets", tmp_path / f"a{k}")
        strip = lambda p: "".join(l for l in p.read_text().splitlines(True) if not l.startswith("wall_seconds"))
        outs.append((out, strip(tmp_path / f"s{k}"), (tmp_path / f"t{k}").read_bytes(), (tmp_path / f"a{k}").read_bytes()))
    assert outs[0] == outs[1]
