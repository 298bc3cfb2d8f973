#include "realset/automaton_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace realset {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

struct LineError {
  std::size_t line;
  [[noreturn]] void operator()(const std::string& what) const {
    throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + what);
  }
};

std::uint64_t number(std::string_view tok, const LineError& fail) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) fail("expected a number, got '" + std::string(tok) + "'");
  return v;
}

}  // namespace

LoadedAutomaton read_automaton(std::string_view text) {
  std::optional<std::uint64_t> base, arity, states, initial;
  std::optional<AcceptanceKind> kind;
  std::optional<StateSet> accepting;
  std::vector<StateSet> accsets;
  struct Trans {
    std::size_t line;
    std::uint64_t from;
    std::string symbol;
    std::uint64_t to;
  };
  std::vector<Trans> trans;
  bool saturated = false, header = false;

  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    LineError fail{line_no};
    auto hash = raw.find('#');
    if (hash != std::string_view::npos) {
      auto comment = split_ws(raw.substr(hash + 1));
      if (comment.size() == 1 && comment[0] == "saturated") saturated = true;
      raw = raw.substr(0, hash);
    }
    auto tok = split_ws(raw);
    if (tok.empty()) continue;
    if (!header) {
      if (tok.size() != 2 || tok[0] != "rna" || tok[1] != "v1") fail("expected header 'rna v1'");
      header = true;
      continue;
    }
    const auto& key = tok[0];
    auto single = [&](std::optional<std::uint64_t>& slot) {
      if (tok.size() != 2) fail("'" + std::string(key) + "' takes one value");
      if (slot) fail("duplicate '" + std::string(key) + "'");
      slot = number(tok[1], fail);
    };
    auto state_list = [&] {
      StateSet s;
      for (std::size_t i = 1; i < tok.size(); ++i) s.push_back(static_cast<State>(number(tok[i], fail)));
      return s;
    };
    if (key == "base") {
      single(base);
    } else if (key == "arity") {
      single(arity);
    } else if (key == "states") {
      single(states);
    } else if (key == "initial") {
      single(initial);
    } else if (key == "acceptance") {
      if (tok.size() != 2) fail("'acceptance' takes one value");
      if (tok[1] == "weak") kind = AcceptanceKind::Weak;
      else if (tok[1] == "buchi") kind = AcceptanceKind::Buchi;
      else if (tok[1] == "cobuchi") kind = AcceptanceKind::CoBuchi;
      else if (tok[1] == "muller") kind = AcceptanceKind::Muller;
      else fail("unknown acceptance '" + std::string(tok[1]) + "'");
    } else if (key == "accepting") {
      if (accepting) fail("duplicate 'accepting'");
      accepting = state_list();
    } else if (key == "accset") {
      accsets.push_back(state_list());
    } else if (key == "trans") {
      if (tok.size() != 4) fail("'trans' takes <from> <symbol> <to>");
      trans.push_back({line_no, number(tok[1], fail), std::string(tok[2]), number(tok[3], fail)});
    } else {
      fail("unknown keyword '" + std::string(key) + "'");
    }
  }
  LineError at_end{line_no};
  if (!header) at_end("missing header 'rna v1'");
  if (!base || !arity || !states || !initial || !kind) at_end("missing base, arity, states, initial or acceptance");
  if (*base < 2 || *base > 1000) at_end("base out of range");
  if (*arity < 1 || *arity > 16) at_end("arity out of range");
  if (*states < 1 || *states > (1ULL << 26)) at_end("state count out of range");
  if (*initial >= *states) at_end("initial state out of range");
  if (*kind == AcceptanceKind::Muller && accepting) at_end("muller acceptance uses 'accset', not 'accepting'");
  if (*kind != AcceptanceKind::Muller && !accsets.empty()) at_end("'accset' is only valid for muller");

  Alphabet alphabet(Base(static_cast<std::uint32_t>(*base)), static_cast<unsigned>(*arity));
  AutomatonBuilder b(alphabet);
  for (std::uint64_t i = 0; i < *states; ++i) b.add_state();
  b.set_initial(static_cast<State>(*initial));
  for (const auto& t : trans) {
    LineError fail{t.line};
    if (t.from >= *states || t.to >= *states) fail("state out of range");
    Symbol s = 0;
    try {
      s = alphabet.parse_symbol(t.symbol);
    } catch (const Error& e) {
      fail(e.what());
    }
    if (b.transition(static_cast<State>(t.from), s)) fail("duplicate transition");
    b.set_transition(static_cast<State>(t.from), s, static_cast<State>(t.to));
  }
  Acceptance acc;
  if (*kind == AcceptanceKind::Muller) {
    acc = Acceptance::muller(*states, accsets);
  } else {
    std::vector<bool> marked(*states, false);
    for (State q : accepting.value_or(StateSet{})) {
      if (q >= *states) at_end("accepting state out of range");
      marked[q] = true;
    }
    acc = {*kind, std::move(marked), {}};
  }
  return {b.build(std::move(acc)), saturated};
}

std::string write_automaton(const OmegaAutomaton& a, bool saturated) {
  std::ostringstream out;
  const auto& al = a.alphabet();
  const auto& acc = a.acceptance();
  out << "rna v1\n";
  if (saturated) out << "# saturated\n";
  out << "base " << al.base().value() << "\n";
  out << "arity " << al.arity() << "\n";
  out << "states " << a.num_states() << "\n";
  out << "initial " << a.initial() << "\n";
  out << "acceptance " << to_string(acc.kind) << "\n";
  if (acc.kind == AcceptanceKind::Muller) {
    for (const auto& m : acc.family) {
      out << "accset";
      for (State q : m) out << ' ' << q;
      out << "\n";
    }
  } else {
    out << "accepting";
    for (State q = 0; q < a.num_states(); ++q)
      if (acc.marked[q]) out << ' ' << q;
    out << "\n";
  }
  for (State q = 0; q < a.num_states(); ++q)
    for (Symbol c = 0; c < al.size(); ++c) out << "trans " << q << ' ' << al.symbol_str(c) << ' ' << a.next(q, c) << "\n";
  return out.str();
}

LoadedAutomaton load_automaton(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return read_automaton(buf.str());
}

void save_automaton(const std::string& path, const OmegaAutomaton& a, bool saturated) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << write_automaton(a, saturated);
}

std::string to_dot(const OmegaAutomaton& a) {
  const auto& al = a.alphabet();
  const auto& acc = a.acceptance();
  std::ostringstream out;
  out << "digraph rna {\n  rankdir=LR;\n  start [shape=point];\n";
  for (State q = 0; q < a.num_states(); ++q) {
    bool ring = acc.kind != AcceptanceKind::Muller && acc.marked[q];
    out << "  q" << q << " [shape=" << (ring ? "doublecircle" : "circle") << "];\n";
  }
  out << "  start -> q" << a.initial() << ";\n";
  for (State q = 0; q < a.num_states(); ++q) {
    std::map<State, std::string> labels;
    for (Symbol c = 0; c < al.size(); ++c) {
      auto& l = labels[a.next(q, c)];
      if (!l.empty()) l += ' ';
      l += al.symbol_str(c);
    }
    for (const auto& [t, l] : labels) out << "  q" << q << " -> q" << t << " [label=\"" << l << "\"];\n";
  }
  if (acc.kind == AcceptanceKind::Muller) {
    out << "  // muller family:";
    for (const auto& m : acc.family) {
      out << " {";
      for (std::size_t i = 0; i < m.size(); ++i) out << (i ? "," : "") << m[i];
      out << "}";
    }
    out << "\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace realset
