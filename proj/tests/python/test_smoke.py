from fractions import Fraction

import pytest

import relchar


@pytest.fixture(scope="module")
def pair():
    pairs = relchar.enumerate_pairs(3, "ps", 1, 2)
    assert pairs
    return pairs[0]


def test_pair_metadata(pair):
    assert pair.p == 3
    assert pair.kind == "ps"
    assert pair.c_chi >= 1
    assert pair.c_pair >= 1
    assert abs(abs(pair.gamma_half) - 1.0) < 1e-9


def test_three_routes_agree(pair):
    N = max(1, (pair.c_chi + 1) // 2)
    for tau_y in (None, (1, 1)):
        H, H_stab = pair.bruteforce(N, tau_y=tau_y)
        assert H == H_stab  # R-stabilized exactly
        integral = pair.integral_closed(N, tau_y=tau_y)
        lattice = pair.integral_lattice(N, tau_y=tau_y)
        assert integral == lattice
        rhs = float(Fraction(integral["value"]))
        assert abs(abs(H) - rhs) < 1e-8 * max(1.0, rhs)


def test_table_cell_shape(pair):
    N = max(1, (pair.c_chi + 1) // 2)
    t = pair.table(N, tau_y=(1, 1))
    assert isinstance(t["cell"], str)
    assert Fraction(t["cell"]) >= 0


def test_eps_unitarity():
    # a conductor-2 character of Q_3
    e = relchar.eps_half(3, 2, [0, 1])
    assert abs(abs(e) - 1.0) < 1e-9


def test_run_config_factors():
    records = relchar.run({"cmd": "verify-factors", "p": 3})
    assert records
    assert all(r["pass"] for r in records if "pass" in r)


def test_corpus_render_deterministic():
    cfg = {
        "cmd": "verify-main",
        "p": 3,
        "kind": "ps",
        "rep": {"m": 1, "exps": [1], "wpi": "0"},
        "chi": {"m": 2, "exps": [0, 1], "wpi": "0"},
        "N": [1, 1],
        "tol": 1e-8,
    }
    assert relchar.corpus_render(cfg) == relchar.corpus_render(cfg)
