#include "tracelogic/interpreter.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "tracelogic/error.hpp"

namespace tracelogic {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("integer overflow");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error("integer overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("integer overflow");
  return r;
}

// ---------------------------------------------------------------------------
// Input fixtures

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, int line) {
  s = trim(s);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError({line, 1}, "bad integer '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

Input parse_input(std::string_view text) {
  Input in;
  std::istringstream is{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    std::string_view l = raw;
    if (auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
    l = trim(l);
    if (l.empty()) continue;
    auto eq = l.find('=');
    if (eq == std::string_view::npos) throw ParseError({line, 1}, "expected name = value");
    std::string name(trim(l.substr(0, eq)));
    std::string_view value = trim(l.substr(eq + 1));
    if (name.empty()) throw ParseError({line, 1}, "missing name");
    if (in.scalars.contains(name) || in.arrays.contains(name)) {
      throw ParseError({line, 1}, "duplicate value for '" + name + "'");
    }
    if (!value.empty() && value.front() == '[') {
      if (value.back() != ']') throw ParseError({line, 1}, "unterminated array");
      std::vector<std::int64_t> cells;
      std::string_view body = trim(value.substr(1, value.size() - 2));
      while (!body.empty()) {
        auto comma = body.find(',');
        cells.push_back(parse_int(body.substr(0, comma), line));
        if (comma == std::string_view::npos) break;
        body = body.substr(comma + 1);
      }
      in.arrays.emplace(std::move(name), std::move(cells));
    } else {
      in.scalars.emplace(std::move(name), parse_int(value, line));
    }
  }
  return in;
}

Input read_input_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot read " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return parse_input(ss.str());
  } catch (const ParseError& e) {
    throw Error(path.string() + ":" + e.what());
  }
}

std::string format_input(const Input& in) {
  std::ostringstream os;
  for (const auto& [name, v] : in.scalars) os << name << " = " << v << '\n';
  for (const auto& [name, cells] : in.arrays) {
    os << name << " = [";
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? ", " : "") << cells[i];
    os << "]\n";
  }
  return os.str();
}

namespace {

/// Variables whose initial value is observable: constants, and mutable
/// variables some statement may read before the first assignment.
std::vector<const ast::VarDecl*> input_vars(const ast::Program& p) {
  std::set<std::string> assigned_first;
  // a top-level IntAssign whose value does not mention the target fixes it
  for (const auto& s : p.body) {
    if (s.kind != ast::Statement::Kind::IntAssign || assigned_first.contains(s.target)) break;
    bool reads_self = false;
    std::vector<const ast::Expr*> stack{s.value.get()};
    while (!stack.empty()) {
      const ast::Expr* e = stack.back();
      stack.pop_back();
      if (e->name == s.target) reads_self = true;
      for (const auto& o : e->operands) stack.push_back(o.get());
    }
    if (reads_self) break;
    assigned_first.insert(s.target);
  }
  std::vector<const ast::VarDecl*> out;
  for (const auto& d : p.decls) {
    if (!assigned_first.contains(d.name)) out.push_back(&d);
  }
  return out;
}

std::int64_t random_value(std::mt19937_64& rng, const RandomInputOptions& opt) {
  return std::uniform_int_distribution<std::int64_t>(opt.min_value, opt.max_value)(rng);
}

}  // namespace

Input random_input(const ast::Program& p, std::mt19937_64& rng, const RandomInputOptions& opt) {
  Input in;
  auto vars = input_vars(p);
  for (const auto* d : vars) {
    if (!d->is_array) continue;
    int n = std::uniform_int_distribution<int>(0, opt.max_array_length)(rng);
    std::vector<std::int64_t> cells;
    for (int i = 0; i < n; ++i) cells.push_back(random_value(rng, opt));
    in.arrays[d->name] = std::move(cells);
  }
  for (const auto* d : vars) {
    if (d->is_array) continue;
    const std::string suffix = "length";
    if (d->name.size() > suffix.size() && d->name.ends_with(suffix)) {
      auto arr = in.arrays.find(d->name.substr(0, d->name.size() - suffix.size()));
      if (arr != in.arrays.end()) {
        in.scalars[d->name] = static_cast<std::int64_t>(arr->second.size());
        continue;
      }
    }
    in.scalars[d->name] = random_value(rng, opt);
  }
  return in;
}

Input perturb_input(const Input& in, std::mt19937_64& rng, const RandomInputOptions& opt) {
  Input out = in;
  std::vector<std::pair<std::string, std::int64_t>> slots;  // index -1 for scalars
  for (const auto& [name, v] : in.scalars) slots.emplace_back(name, -1);
  for (const auto& [name, cells] : in.arrays) {
    for (std::size_t i = 0; i < cells.size(); ++i) slots.emplace_back(name, static_cast<std::int64_t>(i));
  }
  if (slots.empty()) return out;
  auto [name, index] = slots[std::uniform_int_distribution<std::size_t>(0, slots.size() - 1)(rng)];
  std::int64_t& cell = index < 0 ? out.scalars[name] : out.arrays[name][static_cast<std::size_t>(index)];
  std::int64_t old = cell;
  while (cell == old && opt.min_value < opt.max_value) cell = random_value(rng, opt);
  return out;
}

// ---------------------------------------------------------------------------
// Records

std::int64_t State::scalar(const std::string& name) const {
  auto it = scalars.find(name);
  return it == scalars.end() ? 0 : it->second;
}

std::int64_t State::element(const std::string& name, std::int64_t index) const {
  auto a = arrays.find(name);
  if (a == arrays.end()) return 0;
  auto it = a->second.find(index);
  return it == a->second.end() ? 0 : it->second;
}

std::string GroundTimepoint::to_string() const {
  if (is_end()) return "main_end";
  std::string out = "l" + std::to_string(line);
  if (iters.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < iters.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(iters[i]);
  }
  return out + ')';
}

const State* TraceRecord::at(const GroundTimepoint& tp) const {
  auto it = index.find(tp);
  return it == index.end() ? nullptr : &visits[it->second].second;
}

std::optional<std::uint64_t> TraceRecord::last_iteration(const LoopInstance& loop) const {
  auto it = last_iterations.find(loop);
  if (it == last_iterations.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// Execution

namespace {

struct Item {
  const ast::Statement* stmt;
  std::vector<std::uint64_t> iters;  // enclosing loop iterations
  std::uint64_t counter = 0;         // while statements only
};

std::int64_t eval_int(const ast::Expr& e, const State& st);

bool eval_bool(const ast::Expr& e, const State& st) {
  using ast::BinaryOp;
  if (e.kind == ast::Expr::Kind::Not) return !eval_bool(*e.operands[0], st);
  switch (e.op) {
    case BinaryOp::And: return eval_bool(*e.operands[0], st) && eval_bool(*e.operands[1], st);
    case BinaryOp::Or: return eval_bool(*e.operands[0], st) || eval_bool(*e.operands[1], st);
    default: break;
  }
  std::int64_t a = eval_int(*e.operands[0], st);
  std::int64_t b = eval_int(*e.operands[1], st);
  switch (e.op) {
    case BinaryOp::Lt: return a < b;
    case BinaryOp::Le: return a <= b;
    case BinaryOp::Gt: return a > b;
    case BinaryOp::Ge: return a >= b;
    case BinaryOp::Eq: return a == b;
    case BinaryOp::Ne: return a != b;
    default: throw Error("integer expression in condition position");
  }
}

std::int64_t eval_int(const ast::Expr& e, const State& st) {
  switch (e.kind) {
    case ast::Expr::Kind::IntLit: return e.value;
    case ast::Expr::Kind::VarRef: return st.scalar(e.name);
    case ast::Expr::Kind::ArrayRead: return st.element(e.name, eval_int(*e.operands[0], st));
    case ast::Expr::Kind::Binary: break;
    case ast::Expr::Kind::Not: throw Error("boolean expression in integer position");
  }
  std::int64_t a = eval_int(*e.operands[0], st);
  std::int64_t b = eval_int(*e.operands[1], st);
  switch (e.op) {
    case ast::BinaryOp::Add: return checked_add(a, b);
    case ast::BinaryOp::Sub: return checked_sub(a, b);
    case ast::BinaryOp::Mul: return checked_mul(a, b);
    default: throw Error("boolean expression in integer position");
  }
}

GroundTimepoint timepoint_of(const Item& item) {
  GroundTimepoint tp{item.stmt->line, item.iters};
  if (item.stmt->is_while()) tp.iters.push_back(item.counter);
  return tp;
}

}  // namespace

TraceRecord run(const ast::Program& p, const Input& input, std::uint64_t fuel) {
  TraceRecord rec;
  rec.input = input;

  State st;
  for (const auto& d : p.decls) {
    if (d.is_array) {
      auto& cells = st.arrays[d.name];
      if (auto it = input.arrays.find(d.name); it != input.arrays.end()) {
        for (std::size_t i = 0; i < it->second.size(); ++i) {
          cells[static_cast<std::int64_t>(i)] = it->second[i];
        }
      }
    } else {
      auto it = input.scalars.find(d.name);
      st.scalars[d.name] = it == input.scalars.end() ? 0 : it->second;
    }
  }

  auto visit = [&](GroundTimepoint tp) {
    auto [it, fresh] = rec.index.emplace(tp, rec.visits.size());
    if (!fresh) throw Error("timepoint " + tp.to_string() + " visited twice");
    rec.visits.emplace_back(std::move(tp), st);
  };

  // continuation, top of stack last
  std::vector<Item> cont;
  for (auto it = p.body.rbegin(); it != p.body.rend(); ++it) cont.push_back({&*it, {}, 0});

  while (!cont.empty()) {
    if (rec.steps++ >= fuel) {
      throw FuelExhausted("no termination within " + std::to_string(fuel) + " steps");
    }
    Item item = std::move(cont.back());
    cont.pop_back();
    visit(timepoint_of(item));
    const ast::Statement& s = *item.stmt;

    switch (s.kind) {
      case ast::Statement::Kind::Skip: break;
      case ast::Statement::Kind::IntAssign: st.scalars[s.target] = eval_int(*s.value, st); break;
      case ast::Statement::Kind::ArrayAssign: {
        std::int64_t index = eval_int(*s.index, st);
        st.arrays[s.target][index] = eval_int(*s.value, st);
        break;
      }
      case ast::Statement::Kind::IfElse: {
        const auto& branch = eval_bool(*s.condition, st) ? s.body : s.orelse;
        for (auto it = branch.rbegin(); it != branch.rend(); ++it) cont.push_back({&*it, item.iters, 0});
        break;
      }
      case ast::Statement::Kind::While: {
        if (eval_bool(*s.condition, st)) {
          cont.push_back({&s, item.iters, item.counter + 1});
          auto inner = item.iters;
          inner.push_back(item.counter);
          for (auto it = s.body.rbegin(); it != s.body.rend(); ++it) cont.push_back({&*it, inner, 0});
        } else {
          rec.last_iterations[{s.line, item.iters}] = item.counter;
        }
        break;
      }
    }
  }
  visit({0, {}});
  return rec;
}

}  // namespace tracelogic
