// Copyright 2026 The teamltl Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "teamltl/formula.hpp"
#include "teamltl/kripke.hpp"
#include "teamltl/traces.hpp"

namespace teamltl {

// Three-counter machines. Counters are indexed 0 = l, 1 = m, 2 = r.
struct Instruction {
  enum class Op { Inc, Dec, IfZero } op = Op::Inc;
  std::size_t counter = 0;
  std::size_t j1 = 0, j2 = 0;  // targets; IfZero: j1 when zero, j2 otherwise
};

struct CounterMachine {
  std::vector<Instruction> instructions;
  std::size_t size() const { return instructions.size(); }
};

// Checks n >= 1, counters < 3 and targets < n.
CounterMachine make_machine(std::vector<Instruction> ins);

// One instruction per line, labels 0..n-1 in order:
//   i: INC l -> {j1,j2}   i: DEC m -> {j1,j2}   i: IFZ r ? j1 : j2
// '#' starts a comment.
CounterMachine parse_machine(const std::string& text);
std::string render_machine(const CounterMachine& I);

struct Config {
  std::size_t instr = 0;
  std::array<std::size_t, 3> c{};
  bool operator==(const Config&) const = default;
  auto operator<=>(const Config&) const = default;
};

// Eventually periodic configuration sequence; loop nonempty.
struct Run {
  std::vector<Config> stem, loop;
};

// "stem:" and "loop:" sections of tuples (i,vl,vm,vr).
Run parse_run(const std::string& text);
std::string render_config(const Config& c);

// Exact consecution: successors of a configuration.
std::vector<Config> step(const CounterMachine& I, const Config& c);
bool consecutive(const CounterMachine& I, const Config& a, const Config& b);
// Lossy consecution: a' <= a and a' -> b' with b' >= b.
bool lossy_consecutive(const CounterMachine& I, const Config& a, const Config& b);

// Propositions c_l, c_m, c_r, d, 0..n-1 in this order.
std::vector<std::string> machine_props(std::size_t n);
const char* counter_prop(std::size_t s);

// W = {(i,j,k,t,l)}, R = W x W, w0 = (0,0,0,0,0); state id = i*16 + j*8 + k*4 + t*2 + l.
Kripke build_kripke(const CounterMachine& I);
std::size_t kripke_state(std::size_t i, bool j, bool k, bool t, bool l);

// Per-instruction step formulas.
Formula theta_lossy(const CounterMachine& I, std::size_t i);
Formula theta_exact(const CounterMachine& I, std::size_t i);
Formula theta_comp(const CounterMachine& I);
Formula theta_comp_exact(const CounterMachine& I);
Formula theta_diff();
Formula theta_rec(std::size_t b);

// (theta_comp & G F b) orl true. Throws invalid_argument if b >= n.
Formula build_formula_lossy(const CounterMachine& I, std::size_t b);
// (theta_diff & theta'_comp & G F b) orl true; a single SubteamAll node.
Formula build_formula_nonlossy(const CounterMachine& I, std::size_t b);

struct SatEmbedding {
  Kripke extended;               // K plus one fresh proposition per state
  std::vector<std::string> state_props;  // per state
  Formula theta;
};

SatEmbedding build_sat_embedding(const Kripke& K);

struct EncodeOptions {
  bool lossy = true;            // validate with lossy or exact consecution
  std::size_t max_traces = 64;
};

// Team encoding of a run: every trace carries the current instruction;
// counter s has value v iff v distinct suffixes carry c_s. Slot traces are
// assigned stack-wise, and each slot carries d at its own loop offset.
// Throws invalid_argument on a bad run (initial configuration, consecution,
// b not recurring) and when the team would exceed max_traces.
Team encode_computation(const CounterMachine& I, const Run& run, std::size_t b, const EncodeOptions& opts = {});

// Encoding without validation; used for single-step checks.
Team encode_sequence(std::size_t n, const Run& run, std::size_t max_traces = 64);

}  // namespace teamltl
