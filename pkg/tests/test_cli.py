import pytest

from releq import (Alphabet, GenParams, brzozowski_automaton, determinize,
                   gen_icdfa, hopcroft_minimize, parse,
                   partial_derivative_nfa, read_automaton, save_automaton,
                   worst_case_family, write_automaton)
from releq.cli import main

AB = Alphabet(("a", "b"))


def write_machines(tmp_path):
    a2 = worst_case_family(2)
    paths = {}
    for name, machine in [
        ("a2.nfa", partial_derivative_nfa(a2)),
        ("a2.dfa", brzozowski_automaton(a2)),
        ("final_loop.dfa", brzozowski_automaton(parse("(a+b)*"), alphabet=AB)),
        ("nonfinal_loop.dfa", brzozowski_automaton(parse("(a+b)(a+b)*"), alphabet=AB)),
    ]:
        save_automaton(machine, tmp_path / name)
        paths[name] = str(tmp_path / name)
    return paths


class TestEquiv:
    def test_am_on_inline_regexes(self, capsys):
        assert main(["equiv", "--alg", "am", "(a+b)*", "(b+a)*"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("verdict=eq ")
        assert out.strip().endswith("witness=-")

    def test_hki_initial_finality_mismatch(self, tmp_path, capsys):
        paths = write_machines(tmp_path)
        code = main(["equiv", "--alg", "hki",
                     paths["final_loop.dfa"], paths["nonfinal_loop.dfa"]])
        assert code == 1
        out = capsys.readouterr().out
        assert 'witness=""' in out
        assert "verdict=neq iters=1 " in out

    def test_hke_mixed_representations_with_convert(self, tmp_path, capsys):
        paths = write_machines(tmp_path)
        code = main(["equiv", "--alg", "hke", "--convert",
                     paths["a2.nfa"], paths["a2.dfa"]])
        assert code == 0

    def test_mixed_kinds_need_convert(self, tmp_path, capsys):
        paths = write_machines(tmp_path)
        code = main(["equiv", "--alg", "hke", paths["a2.nfa"], paths["a2.dfa"]])
        assert code == 2
        assert "--convert" in capsys.readouterr().err

    def test_auto_picks_hki_for_dfas(self, tmp_path, capsys):
        paths = write_machines(tmp_path)
        assert main(["equiv", paths["a2.dfa"], paths["a2.dfa"]]) == 0

    def test_auto_picks_equivuf_for_regexes(self, capsys):
        assert main(["equiv", "a(ba)*", "(ab)*a"]) == 0

    def test_auto_regex_vs_automaton_via_convert(self, tmp_path, capsys):
        paths = write_machines(tmp_path)
        assert main(["equiv", "--convert", paths["a2.nfa"], "(a+b)*a(a+b)(a+b)"]) == 0
        assert main(["equiv", "--convert", paths["a2.nfa"], "(a+b)*b"]) == 1

    def test_hk_family_needs_convert_for_regex_inputs(self, capsys):
        assert main(["equiv", "--alg", "hk", "ab", "ab"]) == 2
        assert main(["equiv", "--alg", "hk", "--convert", "ab", "ab"]) == 0

    def test_am_rejects_automaton_even_with_convert(self, tmp_path, capsys):
        paths = write_machines(tmp_path)
        code = main(["equiv", "--alg", "am", "--convert",
                     paths["a2.dfa"], paths["a2.dfa"]])
        assert code == 2

    def test_exit_codes_stable_across_algorithms(self, tmp_path):
        x = gen_icdfa(GenParams(n=5, k=2, seed=100))
        y = gen_icdfa(GenParams(n=5, k=2, seed=101))
        save_automaton(x, tmp_path / "x.dfa")
        save_automaton(y, tmp_path / "y.dfa")
        codes = {
            main(["equiv", "--alg", alg, "--convert",
                  str(tmp_path / "x.dfa"), str(tmp_path / "y.dfa")])
            for alg in ("hk", "hki", "hkn", "hke", "auto")
        }
        assert len(codes) == 1

    def test_witness_printed_quoted(self, capsys):
        code = main(["equiv", "a*b*", "(a+b)*"])
        assert code == 1
        out = capsys.readouterr().out
        assert 'witness="' in out

    def test_regex_syntax_error_is_exit_2(self, capsys):
        assert main(["equiv", "a+", "a"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_missing_file_is_regex_parse_failure(self, capsys):
        assert main(["equiv", "no/such/file.dfa", "a"]) == 2

    def test_usage_error(self, capsys):
        assert main(["equiv", "only-one-arg"]) == 2

    def test_hkn_flag(self, tmp_path, capsys):
        paths = write_machines(tmp_path)
        assert main(["equiv", "--alg", "hkn", paths["a2.dfa"], paths["a2.dfa"]]) == 0


class TestMinimize:
    def test_minimize_fixpoint(self, tmp_path, capsys):
        n = worst_case_family(4, variant="nfa")
        save_automaton(n, tmp_path / "in.nfa")
        out1 = tmp_path / "m1.dfa"
        assert main(["minimize", str(tmp_path / "in.nfa"), "-o", str(out1)]) == 0
        first = read_automaton(out1.read_text())
        assert first.n_states == 8
        out2 = tmp_path / "m2.dfa"
        assert main(["minimize", str(out1), "-o", str(out2)]) == 0
        assert read_automaton(out2.read_text()).n_states == first.n_states

    def test_stdout_output_round_trips(self, tmp_path, capsys):
        paths = write_machines(tmp_path)
        assert main(["minimize", paths["a2.dfa"]]) == 0
        text = capsys.readouterr().out
        assert write_automaton(read_automaton(text)) == text

    def test_brzozowski_method_agrees(self, tmp_path, capsys):
        paths = write_machines(tmp_path)
        assert main(["minimize", "--method", "brzozowski", paths["a2.nfa"]]) == 0
        text = capsys.readouterr().out
        assert read_automaton(text).n_states == 8

    def test_missing_input_file(self, capsys):
        assert main(["minimize", "nowhere.dfa"]) == 2


class TestGen:
    def test_nfa_seed_reproducible(self, tmp_path):
        f1, f2 = tmp_path / "g1.nfa", tmp_path / "g2.nfa"
        args = ["gen", "nfa", "--n", "5", "--k", "2", "--d", "0.5", "--seed", "7"]
        assert main(args + ["-o", str(f1)]) == 0
        assert main(args + ["-o", str(f2)]) == 0
        assert f1.read_bytes() == f2.read_bytes()

    def test_dfa_round_trips(self, capsys):
        assert main(["gen", "dfa", "--n", "6", "--k", "2", "--seed", "1"]) == 0
        text = capsys.readouterr().out
        assert write_automaton(read_automaton(text)) == text

    def test_regex_output_parses(self, capsys):
        assert main(["gen", "regex", "--size", "17", "--seed", "4"]) == 0
        text = capsys.readouterr().out.strip()
        from releq import size

        assert size(parse(text)) >= 1

    def test_infeasible_density_is_exit_2(self, capsys):
        assert main(["gen", "nfa", "--n", "1", "--k", "1", "--d", "0.1"]) == 2


class TestBench:
    def test_csv_to_stdout(self, tmp_path, capsys):
        cfg = tmp_path / "b.cfg"
        cfg.write_text("kind = dfa\nn = 4\npairs = 3\nalgorithms = hk, hop\n")
        assert main(["bench", "--config", str(cfg)]) == 0
        out = capsys.readouterr().out
        lines = out.strip().split("\n")
        assert lines[0] == "alg,n,k,d,size,pairs,eff_s,total_s,mean_iters,timeouts"
        assert len(lines) == 3

    def test_csv_file_with_figures_alongside(self, tmp_path, capsys):
        cfg = tmp_path / "b.cfg"
        cfg.write_text("kind = regex\nsize = 6\npairs = 3\nalgorithms = am\n")
        out = tmp_path / "report.csv"
        assert main(["bench", "--config", str(cfg), "-o", str(out)]) == 0
        assert out.exists()
        assert (tmp_path / "report_times.png").exists()
        assert (tmp_path / "report_iters.png").exists()

    def test_no_figures_flag(self, tmp_path, capsys):
        cfg = tmp_path / "b.cfg"
        cfg.write_text("kind = dfa\nn = 3\npairs = 2\nalgorithms = hki\n")
        out = tmp_path / "r.csv"
        assert main(["bench", "--config", str(cfg), "-o", str(out),
                     "--no-figures"]) == 0
        assert out.exists()
        assert not (tmp_path / "r_times.png").exists()

    def test_bad_config_is_exit_2(self, tmp_path, capsys):
        cfg = tmp_path / "b.cfg"
        cfg.write_text("kind = dfa\nalgorithms = warp\n")
        assert main(["bench", "--config", str(cfg)]) == 2
