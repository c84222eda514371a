// Copyright 2026 The teamltl Authors
// SPDX-License-Identifier: Apache-2.0

#include "teamltl/reduction.hpp"

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace teamltl {

namespace {

constexpr const char* kCounterNames = "lmr";
constexpr std::size_t kDummy = 3;

std::size_t counter_index(char c) {
  const char* p = std::char_traits<char>::find(kCounterNames, 3, c);
  if (!p) throw std::invalid_argument(std::string("unknown counter ") + c);
  return static_cast<std::size_t>(p - kCounterNames);
}

Formula P(const std::string& p) { return mk_prop(p); }
Formula N(const std::string& p) { return mk_negprop(p); }
Formula label(std::size_t i) { return P(std::to_string(i)); }
Formula c(std::size_t s) { return P(counter_prop(s)); }
Formula nc(std::size_t s) { return N(counter_prop(s)); }

Formula top_in(Formula x) { return mk_inc({mk_true()}, {std::move(x)}); }
Formula bot_in(Formula x) { return mk_inc({mk_false()}, {std::move(x)}); }

Formula singleton(std::size_t n) {
  std::vector<Formula> parts;
  for (const auto& a : machine_props(n)) parts.push_back(mk_boolor(P(a), N(a)));
  return mk_globally(mk_and_all(parts));
}

Formula decrease(std::size_t s) { return mk_or(c(s), mk_and(nc(s), mk_next(nc(s)))); }
Formula preserve(std::size_t s) {
  return mk_or(mk_and(c(s), mk_next(c(s))), mk_and(nc(s), mk_next(nc(s))));
}

Formula next_target(const Instruction& in) { return mk_next(mk_boolor(label(in.j1), label(in.j2))); }

void check_label(const CounterMachine& I, std::size_t i) {
  if (i >= I.size()) throw std::invalid_argument("instruction label " + std::to_string(i) + " out of range");
}

}  // namespace

const char* counter_prop(std::size_t s) {
  static const char* names[] = {"c_l", "c_m", "c_r"};
  if (s > 2) throw std::invalid_argument("counter index out of range");
  return names[s];
}

std::vector<std::string> machine_props(std::size_t n) {
  std::vector<std::string> ap = {"c_l", "c_m", "c_r", "d"};
  for (std::size_t i = 0; i < n; ++i) ap.push_back(std::to_string(i));
  return ap;
}

CounterMachine make_machine(std::vector<Instruction> ins) {
  if (ins.empty()) throw std::invalid_argument("machine has no instructions");
  for (const auto& in : ins) {
    if (in.counter > 2) throw std::invalid_argument("counter index out of range");
    if (in.j1 >= ins.size() || in.j2 >= ins.size()) throw std::invalid_argument("jump target out of range");
  }
  return CounterMachine{std::move(ins)};
}

CounterMachine parse_machine(const std::string& text) {
  static const std::regex incdec(R"(^\s*(\d+)\s*:\s*(INC|DEC)\s+([lmr])\s*->\s*\{\s*(\d+)\s*,\s*(\d+)\s*\}\s*$)");
  static const std::regex ifz(R"(^\s*(\d+)\s*:\s*IFZ\s+([lmr])\s*\?\s*(\d+)\s*:\s*(\d+)\s*$)");
  std::vector<Instruction> ins;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::smatch m;
    Instruction x;
    std::size_t lab;
    if (std::regex_match(line, m, incdec)) {
      lab = std::stoul(m[1]);
      x.op = m[2] == "INC" ? Instruction::Op::Inc : Instruction::Op::Dec;
      x.counter = counter_index(m[3].str()[0]);
      x.j1 = std::stoul(m[4]);
      x.j2 = std::stoul(m[5]);
    } else if (std::regex_match(line, m, ifz)) {
      lab = std::stoul(m[1]);
      x.op = Instruction::Op::IfZero;
      x.counter = counter_index(m[2].str()[0]);
      x.j1 = std::stoul(m[3]);
      x.j2 = std::stoul(m[4]);
    } else {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": malformed instruction");
    }
    if (lab != ins.size())
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected label " + std::to_string(ins.size()));
    ins.push_back(x);
  }
  return make_machine(std::move(ins));
}

std::string render_machine(const CounterMachine& I) {
  std::ostringstream o;
  for (std::size_t i = 0; i < I.size(); ++i) {
    const auto& x = I.instructions[i];
    o << i << ": ";
    switch (x.op) {
      case Instruction::Op::Inc: o << "INC " << kCounterNames[x.counter] << " -> {" << x.j1 << "," << x.j2 << "}"; break;
      case Instruction::Op::Dec: o << "DEC " << kCounterNames[x.counter] << " -> {" << x.j1 << "," << x.j2 << "}"; break;
      case Instruction::Op::IfZero: o << "IFZ " << kCounterNames[x.counter] << " ? " << x.j1 << " : " << x.j2; break;
    }
    o << "\n";
  }
  return o.str();
}

Run parse_run(const std::string& text) {
  static const std::regex tuple(R"(\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\))");
  static const std::regex header(R"(^\s*(stem|loop)\s*:(.*)$)");
  Run r;
  std::vector<Config>* cur = nullptr;
  bool seen_loop = false;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::smatch m;
    std::string body = line;
    if (std::regex_match(line, m, header)) {
      cur = m[1] == "stem" ? &r.stem : &r.loop;
      seen_loop |= m[1] == "loop";
      body = m[2];
    }
    std::string rest = std::regex_replace(body, tuple, "");
    if (rest.find_first_not_of(" \t\r,") != std::string::npos) throw std::invalid_argument("malformed run line: " + line);
    for (std::sregex_iterator it(body.begin(), body.end(), tuple), end; it != end; ++it) {
      if (!cur) throw std::invalid_argument("configuration outside a stem:/loop: section");
      Config cf;
      cf.instr = std::stoul((*it)[1]);
      for (std::size_t s = 0; s < 3; ++s) cf.c[s] = std::stoul((*it)[s + 2]);
      cur->push_back(cf);
    }
  }
  if (!seen_loop || r.loop.empty()) throw std::invalid_argument("run needs a nonempty loop: section");
  return r;
}

std::string render_config(const Config& c) {
  return "(" + std::to_string(c.instr) + "," + std::to_string(c.c[0]) + "," + std::to_string(c.c[1]) + "," +
         std::to_string(c.c[2]) + ")";
}

std::vector<Config> step(const CounterMachine& I, const Config& a) {
  check_label(I, a.instr);
  const auto& x = I.instructions[a.instr];
  std::vector<Config> out;
  auto go = [&](std::size_t j, Config nc) {
    nc.instr = j;
    if (std::find(out.begin(), out.end(), nc) == out.end()) out.push_back(nc);
  };
  Config b = a;
  switch (x.op) {
    case Instruction::Op::Inc:
      ++b.c[x.counter];
      go(x.j1, b);
      go(x.j2, b);
      break;
    case Instruction::Op::Dec:
      if (b.c[x.counter] == 0) break;
      --b.c[x.counter];
      go(x.j1, b);
      go(x.j2, b);
      break;
    case Instruction::Op::IfZero: go(a.c[x.counter] == 0 ? x.j1 : x.j2, b); break;
  }
  return out;
}

bool consecutive(const CounterMachine& I, const Config& a, const Config& b) {
  auto s = step(I, a);
  return std::find(s.begin(), s.end(), b) != s.end();
}

bool lossy_consecutive(const CounterMachine& I, const Config& a, const Config& b) {
  check_label(I, a.instr);
  check_label(I, b.instr);
  const auto& x = I.instructions[a.instr];
  const std::size_t s = x.counter;
  auto others_le = [&] {
    for (std::size_t t = 0; t < 3; ++t)
      if (t != s && b.c[t] > a.c[t]) return false;
    return true;
  };
  if (!others_le()) return false;
  switch (x.op) {
    case Instruction::Op::Inc:
      return (b.instr == x.j1 || b.instr == x.j2) && b.c[s] <= a.c[s] + 1;
    case Instruction::Op::Dec:
      return (b.instr == x.j1 || b.instr == x.j2) && a.c[s] >= 1 && b.c[s] + 1 <= a.c[s];
    case Instruction::Op::IfZero:
      if (b.instr == x.j1 && b.c[s] == 0) return true;
      return b.instr == x.j2 && a.c[s] >= 1 && b.c[s] <= a.c[s];
  }
  return false;
}

std::size_t kripke_state(std::size_t i, bool j, bool k, bool t, bool l) {
  return i * 16 + (j ? 8 : 0) + (k ? 4 : 0) + (t ? 2 : 0) + (l ? 1 : 0);
}

Kripke build_kripke(const CounterMachine& I) {
  const std::size_t n = I.size();
  if (n == 0) throw std::invalid_argument("machine has no instructions");
  const std::size_t W = 16 * n;
  std::vector<Letter> lab(W);
  std::vector<std::size_t> all(W);
  for (std::size_t w = 0; w < W; ++w) all[w] = w;
  for (std::size_t w = 0; w < W; ++w) {
    std::size_t i = w / 16, bits = w % 16;
    Letter L = Letter{1} << (4 + i);
    if (bits & 8) L |= 1u << 0;
    if (bits & 4) L |= 1u << 1;
    if (bits & 2) L |= 1u << 2;
    if (bits & 1) L |= 1u << kDummy;
    lab[w] = L;
  }
  return make_kripke(machine_props(n), std::move(lab), std::vector<std::vector<std::size_t>>(W, all),
                     kripke_state(0, false, false, false, false));
}

Formula theta_lossy(const CounterMachine& I, std::size_t i) {
  check_label(I, i);
  const auto& x = I.instructions[i];
  const std::size_t s = x.counter;
  std::vector<Formula> parts;
  switch (x.op) {
    case Instruction::Op::Inc:
      parts.push_back(next_target(x));
      parts.push_back(mk_or(mk_and(mk_and(singleton(I.size()), nc(s)), mk_next(c(s))), decrease(s)));
      break;
    case Instruction::Op::Dec:
      parts.push_back(next_target(x));
      parts.push_back(mk_leftor(mk_and(c(s), mk_next(nc(s))), decrease(s)));
      break;
    case Instruction::Op::IfZero:
      parts.push_back(mk_boolor(mk_next(mk_and(nc(s), label(x.j1))), mk_and(top_in(c(s)), mk_next(label(x.j2)))));
      for (std::size_t t = 0; t < 3; ++t) parts.push_back(decrease(t));
      return mk_and_all(parts);
  }
  for (std::size_t t = 0; t < 3; ++t)
    if (t != s) parts.push_back(decrease(t));
  return mk_and_all(parts);
}

Formula theta_exact(const CounterMachine& I, std::size_t i) {
  check_label(I, i);
  const auto& x = I.instructions[i];
  const std::size_t s = x.counter;
  std::vector<Formula> parts;
  switch (x.op) {
    case Instruction::Op::Inc:
      parts.push_back(next_target(x));
      parts.push_back(mk_leftor(mk_and(mk_and(singleton(I.size()), nc(s)), mk_next(c(s))), preserve(s)));
      break;
    case Instruction::Op::Dec:
      parts.push_back(next_target(x));
      parts.push_back(mk_leftor(mk_and(mk_and(singleton(I.size()), c(s)), mk_next(nc(s))), preserve(s)));
      break;
    case Instruction::Op::IfZero:
      parts.push_back(mk_boolor(mk_and(nc(s), mk_next(label(x.j1))), mk_and(top_in(c(s)), mk_next(label(x.j2)))));
      for (std::size_t t = 0; t < 3; ++t) parts.push_back(preserve(t));
      return mk_and_all(parts);
  }
  for (std::size_t t = 0; t < 3; ++t)
    if (t != s) parts.push_back(preserve(t));
  return mk_and_all(parts);
}

Formula theta_comp(const CounterMachine& I) {
  std::vector<Formula> alts;
  for (std::size_t i = 0; i < I.size(); ++i) alts.push_back(mk_and(label(i), theta_lossy(I, i)));
  return mk_globally(mk_boolor_all(alts));
}

Formula theta_comp_exact(const CounterMachine& I) {
  std::vector<Formula> alts;
  for (std::size_t i = 0; i < I.size(); ++i) alts.push_back(mk_and(label(i), theta_exact(I, i)));
  return mk_globally(mk_boolor_all(alts));
}

Formula theta_diff() {
  const std::vector<std::string> xs = {"c_l", "c_m", "c_r", "d"};
  std::vector<Formula> same, both;
  for (const auto& x : xs) {
    same.push_back(mk_boolor(P(x), N(x)));
    both.push_back(mk_and(top_in(P(x)), bot_in(P(x))));
  }
  return mk_subteamall(
      mk_boolor(mk_globally(mk_and_all(same)), mk_globally(mk_eventually(mk_boolor_all(both)))));
}

Formula theta_rec(std::size_t b) { return mk_globally(mk_eventually(label(b))); }

Formula build_formula_lossy(const CounterMachine& I, std::size_t b) {
  check_label(I, b);
  return mk_leftor(mk_and(theta_comp(I), theta_rec(b)), mk_true());
}

Formula build_formula_nonlossy(const CounterMachine& I, std::size_t b) {
  check_label(I, b);
  return mk_leftor(mk_and(mk_and(theta_diff(), theta_comp_exact(I)), theta_rec(b)), mk_true());
}

SatEmbedding build_sat_embedding(const Kripke& K) {
  SatEmbedding e;
  std::set<std::string> used(K.ap.begin(), K.ap.end());
  std::string prefix = "p_";
  auto clashes = [&] {
    for (std::size_t w = 0; w < K.size(); ++w)
      if (used.count(prefix + std::to_string(w))) return true;
    return false;
  };
  while (clashes()) prefix = "_" + prefix;
  for (std::size_t w = 0; w < K.size(); ++w) e.state_props.push_back(prefix + std::to_string(w));

  std::vector<std::string> ap = K.ap;
  ap.insert(ap.end(), e.state_props.begin(), e.state_props.end());
  if (ap.size() > 64) throw std::invalid_argument("too many propositions for the embedding");
  std::vector<Letter> lab = K.label;
  for (std::size_t w = 0; w < K.size(); ++w) lab[w] |= Letter{1} << (K.ap.size() + w);
  e.extended = make_kripke(ap, std::move(lab), K.succ, K.init);

  std::vector<Formula> disj;
  for (std::size_t w = 0; w < K.size(); ++w) {
    std::vector<Formula> conj = {P(e.state_props[w])};
    for (std::size_t v = 0; v < K.size(); ++v)
      if (v != w) conj.push_back(N(e.state_props[v]));
    std::vector<Formula> nexts;
    for (std::size_t v : K.succ[w]) {
      conj.push_back(top_in(mk_next(P(e.state_props[v]))));
      nexts.push_back(P(e.state_props[v]));
    }
    conj.push_back(mk_next(mk_or_all(nexts)));
    for (std::size_t a = 0; a < K.ap.size(); ++a)
      conj.push_back((K.label[w] >> a) & 1 ? P(K.ap[a]) : N(K.ap[a]));
    disj.push_back(mk_and_all(conj));
  }
  e.theta = mk_and(P(e.state_props[K.init]), mk_globally(mk_or_all(disj)));
  return e;
}

Team encode_sequence(std::size_t n, const Run& run, std::size_t max_traces) {
  if (run.loop.empty()) throw std::invalid_argument("run loop is empty");
  std::array<std::size_t, 3> slots{};
  auto visit = [&](const Config& cf) {
    if (cf.instr >= n) throw std::invalid_argument("configuration label out of range");
    for (std::size_t s = 0; s < 3; ++s) slots[s] = std::max(slots[s], cf.c[s]);
  };
  for (const auto& cf : run.stem) visit(cf);
  for (const auto& cf : run.loop) visit(cf);
  const std::size_t total = 1 + slots[0] + slots[1] + slots[2];
  if (total > max_traces)
    throw std::invalid_argument("encoding needs " + std::to_string(total) + " traces, budget is " +
                                std::to_string(max_traces));

  // Slot g (numbered across counters from 1) carries d once per extended
  // loop, at offset g-1; the base trace never does.
  const std::size_t L = run.loop.size();
  const std::size_t reps = std::max<std::size_t>(1, (total - 1 + L - 1) / L);

  auto letter = [](const Config& cf, long s, std::size_t k) {
    Letter l = Letter{1} << (4 + cf.instr);
    if (s >= 0 && cf.c[s] > k) l |= Letter{1} << s;
    return l;
  };
  std::vector<LassoTrace> traces;
  std::size_t g = 0;
  auto make = [&](long s, std::size_t k) {
    LassoTrace t;
    for (const auto& cf : run.stem) t.stem.push_back(letter(cf, s, k));
    for (std::size_t r = 0; r < reps; ++r)
      for (const auto& cf : run.loop) t.loop.push_back(letter(cf, s, k));
    if (g > 0) t.loop[g - 1] |= Letter{1} << kDummy;
    ++g;
    traces.push_back(t);
  };
  make(-1, 0);
  for (long s = 0; s < 3; ++s)
    for (std::size_t k = 0; k < slots[s]; ++k) make(s, k);
  return make_team(machine_props(n), std::move(traces));
}

Team encode_computation(const CounterMachine& I, const Run& run, std::size_t b, const EncodeOptions& opts) {
  check_label(I, b);
  if (run.loop.empty()) throw std::invalid_argument("run loop is empty");
  std::vector<Config> seq = run.stem;
  seq.insert(seq.end(), run.loop.begin(), run.loop.end());
  if (seq.front() != Config{}) throw std::invalid_argument("run must start in (0,0,0,0)");
  for (const auto& cf : seq) check_label(I, cf.instr);
  auto ok = [&](const Config& a, const Config& c) {
    return opts.lossy ? lossy_consecutive(I, a, c) : consecutive(I, a, c);
  };
  for (std::size_t j = 0; j < seq.size(); ++j) {
    const Config& nxt = j + 1 < seq.size() ? seq[j + 1] : run.loop.front();
    if (!ok(seq[j], nxt))
      throw std::invalid_argument("consecution violated at step " + std::to_string(j) + ": " +
                                  render_config(seq[j]) + " -> " + render_config(nxt));
  }
  bool recurs = std::any_of(run.loop.begin(), run.loop.end(), [&](const Config& cf) { return cf.instr == b; });
  if (!recurs) throw std::invalid_argument("instruction " + std::to_string(b) + " does not recur in the loop");
  return encode_sequence(I.size(), run, opts.max_traces);
}

}  // namespace teamltl
