"""Pushdown machines, grammars, and the operations connecting them."""

from .cfg import Cfg, IncrementalCyk, cfg_membership, membership_tables, to_cnf
from .closure import cyclic_closure
from .convert import npda_to_cfg
from .npda import (BOTTOM, Npda, RunStep, bounded_accepts,
                   end_marker_discipline, find_accepting_run,
                   is_one_counter, simulate)
from .semidet import (PreambleSpec, SemiDetPda, run_deterministic,
                      run_deterministic_steps, semidet_accepts_enum,
                      semidet_to_npda, semidet_validate,
                      semidet_witness_run)
from .serialize import (format_automaton, format_cfg, format_npda,
                        format_semidet, parse_automaton, parse_cfg,
                        parse_npda, parse_semidet)

__all__ = [
    "BOTTOM", "Cfg", "IncrementalCyk", "Npda", "PreambleSpec", "RunStep",
    "SemiDetPda", "bounded_accepts", "cfg_membership", "cyclic_closure",
    "end_marker_discipline", "find_accepting_run", "format_automaton",
    "format_cfg", "format_npda", "format_semidet", "is_one_counter",
    "membership_tables", "npda_to_cfg", "parse_automaton", "parse_cfg",
    "parse_npda", "parse_semidet", "run_deterministic",
    "run_deterministic_steps", "semidet_accepts_enum",
    "semidet_to_npda", "semidet_validate", "semidet_witness_run",
    "simulate", "to_cnf",
]
