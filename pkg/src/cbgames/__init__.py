"""Counter-machine ω-languages, codings and infinite games."""

from .codings import (CodingSpec, K_default, assemble_script_L, build_gadget, data_position, encode,
                      encode_h_by_rules, in_pref, min_even_S)
from .constructions import intersect_with_buchi, union_machines, up_singleton_automaton, zero_star_one_omega
from .games import (GSPlay, TransducerStrategy, Undecided, WadgeOutcome, gs_winner, lift_gs, lift_wadge,
                    play_gs, play_gs_transducers, play_wadge, sum_membership)
from .machines import CounterMachine, Transition, dump_machine, parse_machine, validate_machine
from .membership import Accept, Reject, SearchLimits, Unknown, accepts_up_bounded, accepts_up_buchi
from .words import Alphabet, LazyWord, UPWord, parse_up

__all__ = [
    "Accept", "Alphabet", "CodingSpec", "CounterMachine", "GSPlay", "K_default", "LazyWord", "Reject",
    "SearchLimits", "TransducerStrategy", "Transition", "UPWord", "Undecided", "Unknown", "WadgeOutcome",
    "accepts_up_bounded", "accepts_up_buchi", "assemble_script_L", "build_gadget", "data_position",
    "dump_machine", "encode", "encode_h_by_rules", "gs_winner", "in_pref", "intersect_with_buchi",
    "lift_gs", "lift_wadge", "min_even_S", "parse_machine", "parse_up", "play_gs", "play_gs_transducers",
    "play_wadge", "sum_membership", "union_machines", "up_singleton_automaton", "validate_machine",
    "zero_star_one_omega",
]
