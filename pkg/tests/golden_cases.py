"""CLI golden cases: name, argv, expected exit code.

Run this file directly to rewrite the expected outputs in tests/golden.
"""
import io
import sys
from pathlib import Path

from roundfold.cli import run

ROOT = Path(__file__).resolve().parent
DATA = ROOT.parent / "src" / "roundfold" / "data"
INPUTS = ROOT / "inputs"
GOLDEN = ROOT / "golden"


def _d(name):
    return str(DATA / name)


def _i(name):
    return str(INPUTS / name)


CASES = [
    ("parse_lens5", ["parse", _d("lens5.gm")], 0),
    ("parse_theta_json", ["parse", _d("theta.gm"), "--json"], 0),
    ("decompose_seifert", ["decompose", _d("seifert_235.gm")], 0),
    ("decompose_nobuffers", ["decompose", "--no-buffers", _d("star4.gm")], 0),
    ("label_star4", ["label", _d("star4.gm")], 0),
    ("label_lens5_json", ["label", _d("lens5.gm"), "--json"], 0),
    ("construct_star4", ["construct-directed", _d("star4.gm")], 0),
    ("construct_s3_json", ["construct-directed", _d("s3.gm"), "--json"], 0),
    ("from_morse_g1", ["from-morse", _d("g1.mf")], 0),
    ("from_morse_g2", ["from-morse", _d("g2.mf")], 0),
    ("from_morse_disk", ["from-morse", _d("disk.mf")], 0),
    ("verify_star4", ["verify", _d("star4.rfd")], 0),
    ("verify_batch", ["verify", _d("star4.rfd"), _d("g1.rfd"), _d("g2.mf")], 0),
    ("verify_count_jump", ["verify", _i("count_jump.rfd")], 1),
    ("directions_g1", ["directions", _d("g1.mf")], 0),
    ("directions_g2", ["directions", _d("g2.mf")], 0),
    ("openbook_g1", ["openbook", _d("g1.mf")], 0),
    ("openbook_star4_json", ["openbook", _d("star4.rfd"), "--json"], 0),
    ("homology_lens5", ["homology", _d("lens5.gm")], 0),
    ("homology_s3", ["homology", _d("s3.gm")], 0),
    ("homology_bundle", ["homology", _d("torus_bundle_3.gm")], 0),
    ("homology_sigma2", ["homology", _d("sigma2_s1.gm"), "--json"], 0),
    ("homology_wrong_suffix", ["homology", _d("g1.mf")], 2),
    ("admits_star4", ["admits-directed", _d("star4.gm")], 0),
    ("admits_bundle", ["admits-directed", "--torus-bundle", "2", "1", "1", "1"], 0),
    ("admits_t3", ["admits-directed", _d("t3.gm")], 0),
    ("admits_theta", ["admits-directed", _d("theta.gm")], 0),
    ("admits_seifert_json", ["admits-directed", _d("seifert_235.gm"), "--json"], 0),
    ("identify_g1", ["identify", _d("g1.mf")], 0),
    ("identify_disk", ["identify", _d("disk.mf")], 0),
    ("identify_g2_json", ["identify", _d("g2.mf"), "--json"], 0),
    ("render_star4_dot", ["render", _d("star4.gm")], 0),
    ("render_g1_svg", ["render", _d("g1.mf")], 0),
    ("render_star4_rfd_dot", ["render", "--format", "dot", _d("star4.rfd")], 0),
    ("render_svg_of_graph", ["render", "--format", "svg", _d("star4.gm")], 2),
    ("parse_bad_kind", ["parse", _i("bad_kind.gm")], 2),
    ("parse_missing_file", ["parse", _i("missing.gm")], 2),
    ("usage_no_command", [], 2),
]


def normalize(text):
    # absolute fixture paths differ between checkouts
    return text.replace(str(DATA) + "/", "").replace(str(INPUTS) + "/", "")


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    return code, normalize(out.getvalue()), normalize(err.getvalue())


def render_case(code, out, err):
    return f"exit {code}\n--- stdout\n{out}--- stderr\n{err}"


def main():
    GOLDEN.mkdir(exist_ok=True)
    for name, argv, _ in CASES:
        (GOLDEN / f"{name}.txt").write_text(render_case(*invoke(argv)))
    print(f"wrote {len(CASES)} golden files", file=sys.stderr)


if __name__ == "__main__":
    main()
