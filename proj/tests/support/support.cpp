#include "support.hpp"

#include <fstream>
#include <sstream>

namespace tracelogic::fixtures {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

namespace {

struct Gen {
  std::mt19937_64& rng;
  std::ostringstream out;
  int counters = 0;

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  std::string atom() {
    switch (pick(6)) {
      case 0: return std::to_string(pick(7) - 3);
      case 1: return "x";
      case 2: return "y";
      case 3: return "c";
      case 4: return "m[" + std::to_string(pick(4)) + "]";
      default: return "b[" + small() + "]";
    }
  }

  std::string small() { return pick(2) ? "x" : std::to_string(pick(4)); }

  std::string expr(int depth) {
    if (depth == 0 || pick(3) == 0) return atom();
    static const char* ops[] = {"+", "-", "+", "-", "*"};
    std::string op = ops[pick(5)];
    // keep products of a literal so values stay small inside loops
    if (op == "*") return std::to_string(pick(3) - 1) + " * " + atom();
    return "(" + expr(depth - 1) + " " + op + " " + expr(depth - 1) + ")";
  }

  std::string cond() {
    static const char* cmp[] = {"<", "<=", ">", ">=", "==", "!="};
    std::string c = expr(1) + " " + cmp[pick(6)] + " " + expr(1);
    if (pick(4) == 0) c = "!(" + c + ")";
    if (pick(4) == 0) c = c + (pick(2) ? " && " : " || ") + expr(0) + " < " + expr(0);
    return c;
  }

  void block(int depth, int count) {
    for (int i = 0; i < count; ++i) statement(depth);
  }

  void statement(int depth) {
    int kind = pick(depth > 0 ? 7 : 5);
    switch (kind) {
      case 0:
      case 1: out << (pick(2) ? "x" : "y") << " = " << expr(2) << ";\n"; break;
      case 2: out << "z = " << expr(1) << ";\n"; break;
      case 3: out << "m[" << small() << "] = " << expr(1) << ";\n"; break;
      case 4: out << "skip;\n"; break;
      case 5:
        out << "if (" << cond() << ")\n{\n";
        block(depth - 1, 1 + pick(2));
        out << "}\nelse\n{\n";
        block(depth - 1, 1 + pick(2));
        out << "}\n";
        break;
      default: {
        std::string w = "w" + std::to_string(counters++);
        out << w << " = 0;\n";
        out << "while (" << w << " < " << (pick(2) ? "d" : std::to_string(pick(4))) << ")\n{\n";
        block(depth - 1, 1 + pick(2));
        out << w << " = " << w << " + 1;\n}\n";
      }
    }
  }
};

}  // namespace

std::string random_program(std::mt19937_64& rng, int max_depth) {
  Gen g{rng, {}, 0};
  g.block(max_depth, 2 + g.pick(4));
  std::string stmts = g.out.str();

  std::ostringstream p;
  p << "func main()\n{\n"
    << "const Int c;\nconst Int d;\nconst Int[] b;\n"
    << "Int x;\nInt y;\nInt z = 0;\nInt[] m;\n";
  for (int i = 0; i < g.counters; ++i) p << "Int w" << i << ";\n";
  p << stmts << "}\n";
  return p.str();
}

TraceRecord perturb_record(const TraceRecord& rec, std::size_t visit, const std::string& var) {
  TraceRecord out = rec;
  auto& v = out.visits.at(visit).second.scalars.at(var);
  v = v + 1;
  return out;
}

}  // namespace tracelogic::fixtures
