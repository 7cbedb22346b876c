"""Machine and grammar files: lossless, byte-deterministic round trips."""

import pytest

from cowords.automata import (Cfg, format_automaton, format_cfg,
                              format_npda, format_semidet, npda_to_cfg,
                              parse_automaton, parse_cfg, parse_npda,
                              parse_semidet)

from test_automata import balance_machine, match_machine, tri_semidet


class TestNpdaFiles:
    def test_round_trip_equality(self):
        for m in (match_machine(), balance_machine()):
            assert parse_npda(format_npda(m)) == m

    def test_format_is_canonical(self):
        text = format_npda(balance_machine())
        assert format_npda(parse_npda(text)) == text

    def test_marker_line_only_when_declared(self):
        assert "endmarker $" in format_npda(balance_machine())
        assert "endmarker" not in format_npda(match_machine())

    def test_known_lines(self):
        text = format_npda(match_machine())
        lines = text.splitlines()
        assert lines[0] == "npda"
        assert "inputs a b" in lines
        assert "stack # C" in lines
        assert "initial p" in lines
        assert "accept f" in lines
        assert "trans p a # -> p C #" in lines
        assert "trans q b C -> q" in lines

    def test_epsilon_keyword(self):
        text = format_npda(match_machine())
        assert "trans p eps # -> f #" in text

    def test_bad_tag_rejected(self):
        with pytest.raises(ValueError):
            parse_npda("cfg\n")

    def test_missing_initial_rejected(self):
        with pytest.raises(ValueError):
            parse_npda("npda\ninputs a\nstack #\nstate p\n")

    def test_garbage_line_rejected(self):
        with pytest.raises(ValueError):
            parse_npda("npda\ninputs a\nstack #\ninitial p\nstate p\nbogus\n")


class TestCfgFiles:
    def test_round_trip_equality(self):
        g = npda_to_cfg(match_machine())
        assert parse_cfg(format_cfg(g)) == g

    def test_format_is_canonical(self):
        g = npda_to_cfg(balance_machine())
        text = format_cfg(g)
        assert format_cfg(parse_cfg(text)) == text

    def test_epsilon_body(self):
        g = Cfg(terminals=("a",), nonterminals=("S",), start="S",
                productions={"S": ((), ("a", "S"))})
        text = format_cfg(g)
        assert "prod S -> eps" in text
        assert parse_cfg(text) == g

    def test_eps_symbol_name_rejected(self):
        g = Cfg(terminals=("eps",), nonterminals=("S",), start="S",
                productions={"S": (("eps",),)})
        with pytest.raises(ValueError):
            format_cfg(g)

    def test_missing_start_rejected(self):
        with pytest.raises(ValueError):
            parse_cfg("cfg\nterminals a\nnonterminals S\n")


class TestSemiDetFiles:
    def test_round_trip_equality(self):
        m = tri_semidet()
        assert parse_semidet(format_semidet(m)) == m

    def test_format_is_canonical(self):
        text = format_semidet(tri_semidet())
        assert format_semidet(parse_semidet(text)) == text

    def test_known_lines(self):
        text = format_semidet(tri_semidet())
        lines = text.splitlines()
        assert lines[0] == "semidetpda"
        assert "preamble-symbols A B Z" in lines
        assert "preamble-forbid A B" in lines
        assert "preamble-forbid B A" in lines
        assert "preamble-singleton Z" in lines
        assert "preamble-bound 1 1" in lines
        assert "body" in lines
        assert "npda" in lines

    def test_missing_body_rejected(self):
        with pytest.raises(ValueError):
            parse_semidet("semidetpda\npreamble-symbols A\n")


class TestDispatch:
    def test_round_trips_by_tag(self):
        for obj in (match_machine(), npda_to_cfg(match_machine()),
                    tri_semidet()):
            text = format_automaton(obj)
            back = parse_automaton(text)
            assert back == obj
            assert format_automaton(back) == text

    def test_unknown_tag_rejected(self):
        with pytest.raises(ValueError):
            parse_automaton("tape\n")

    def test_empty_file_rejected(self):
        with pytest.raises(ValueError):
            parse_automaton("   \n")
