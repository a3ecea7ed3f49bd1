// qdet: command-line front end for matrices of linear mappings over
// finite-dimensional associative algebras.
//
// Exit status: 0 success, 1 mathematical failure (a single
// "failure: <Reason>: <detail>" line on stdout), 2 input or format error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <qdet/io.hpp>
#include <qdet/qdet.hpp>

namespace fs = std::filesystem;
using namespace qdet;
using io::OrderedJson;

namespace {

struct Options {
  std::vector<std::string> inputs;
  std::string method = "both";
  std::string pivot;
  std::string out;
};

// Exit code 1 with a machine-parsable reason.
struct Failure {
  std::string reason;
  std::string detail;
};

fs::path base_dir(const std::string& file) { return fs::path(file).parent_path(); }

io::Json load(const std::string& file) { return io::read_json_file(file); }

AlgElement load_element(const std::string& file) { return io::parse_element_file(load(file), base_dir(file)); }
LinMap load_mapping(const std::string& file) { return io::parse_mapping_file(load(file), base_dir(file)); }
MapMatrix load_matrix(const std::string& file) { return io::parse_matrix(load(file), base_dir(file)); }

void require_inputs(const Options& o, std::size_t n, const char* verb) {
  if (o.inputs.size() != n)
    throw format_error(std::string(verb) + " expects " + std::to_string(n) + " input file(s), got " +
                       std::to_string(o.inputs.size()));
}

std::pair<Index, Index> parse_pivot(const std::string& s, Index n) {
  const auto comma = s.find(',');
  if (comma == std::string::npos)
    throw format_error("--pivot must look like p,q");
  std::size_t p = 0, q = 0;
  try {
    std::size_t used = 0;
    p = std::stoul(s.substr(0, comma), &used);
    if (used != comma)
      throw std::invalid_argument("p");
    q = std::stoul(s.substr(comma + 1), &used);
    if (used != s.size() - comma - 1)
      throw std::invalid_argument("q");
  } catch (const std::exception&) {
    throw format_error("--pivot must look like p,q with positive integers");
  }
  if (p == 0 || q == 0 || p > n || q > n)
    throw format_error("--pivot indices are 1-based and must not exceed " + std::to_string(n));
  return {p - 1, q - 1};
}

std::string perm_text(const Permutation& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i)
    s += (i ? " " : "") + std::to_string(p[i] + 1);
  return s + ")";
}

OrderedJson perm_json(const Permutation& p) {
  OrderedJson a = OrderedJson::array();
  for (auto i : p)
    a.push_back(i + 1);
  return a;
}

std::string violation_text(const Violation& v) {
  switch (v.kind) {
  case Violation::Kind::left_unit:
    return "left_unit i=" + std::to_string(v.i) + " k=" + std::to_string(v.p);
  case Violation::Kind::right_unit:
    return "right_unit i=" + std::to_string(v.i) + " k=" + std::to_string(v.p);
  case Violation::Kind::associativity:
    break;
  }
  return "associativity i=" + std::to_string(v.i) + " j=" + std::to_string(v.j) + " k=" + std::to_string(v.k) +
         " p=" + std::to_string(v.p);
}

void check_algebra(const Options& o, std::ostream& out, OrderedJson& report) {
  require_inputs(o, 1, "check-algebra");
  const std::string& ref = o.inputs[0];
  StructureConstants c;
  if (ref.starts_with("builtin:")) {
    try {
      c = builtin_algebra(ref.substr(8))->constants();
    } catch (const std::invalid_argument& e) {
      throw format_error(e.what());
    }
  } else {
    c = io::parse_constants(load(ref));
  }
  const ValidationReport v = validate_algebra(c);
  report["dim"] = c.dim();
  report["ok"] = v.ok();
  OrderedJson list = OrderedJson::array();
  for (const auto& x : v.violations)
    list.push_back(violation_text(x));
  report["violations"] = std::move(list);
  if (!v.ok())
    throw Failure{"InvalidAlgebra", std::to_string(v.violations.size()) + " violations, first " +
                                        violation_text(v.violations.front())};
  out << "ok: associative, unital, dim=" << c.dim() << "\n";
}

void elem_mul(const Options& o, std::ostream& out, OrderedJson& report) {
  if (o.inputs.size() < 2)
    throw format_error("elem-mul expects at least two element files");
  AlgElement acc = load_element(o.inputs[0]);
  for (std::size_t i = 1; i < o.inputs.size(); ++i)
    acc = acc * load_element(o.inputs[i]);
  out << "product: " << io::format_element(acc) << "\n";
  report["product"] = io::to_json(acc);
}

void map_apply(const Options& o, std::ostream& out, OrderedJson& report) {
  require_inputs(o, 2, "map-apply");
  const AlgElement y = apply(load_mapping(o.inputs[0]), load_element(o.inputs[1]));
  out << "result: " << io::format_element(y) << "\n";
  report["result"] = io::to_json(y);
}

void map_compose(const Options& o, std::ostream& out, OrderedJson& report) {
  require_inputs(o, 2, "map-compose");
  const LinMap h = compose(load_mapping(o.inputs[0]), load_mapping(o.inputs[1]));
  out << "compose: " << io::format_map(h) << "\n";
  report["compose"] = io::to_json(h);
}

void map_invert(const Options& o, std::ostream& out, OrderedJson& report) {
  require_inputs(o, 1, "map-invert");
  const LinMap inv = invert_map(load_mapping(o.inputs[0]));
  out << "inverse: " << io::format_map(inv) << "\n";
  report["inverse"] = io::to_json(inv);
}

void mat_product(const Options& o, std::ostream& out, OrderedJson& report, bool rc) {
  require_inputs(o, 2, rc ? "mat-rcmul" : "mat-crmul");
  const MapMatrix a = load_matrix(o.inputs[0]);
  const MapMatrix b = load_matrix(o.inputs[1]);
  const MapMatrix p = rc ? rc_product(a, b) : cr_product(a, b);
  out << (rc ? "rc-product" : "cr-product") << " " << p.rows() << "x" << p.cols() << ":\n" << io::format_matrix(p);
  report["product"] = io::to_json(p);
}

void quasidet(const Options& o, std::ostream& out, OrderedJson& report) {
  require_inputs(o, 1, "quasidet");
  const MapMatrix a = load_matrix(o.inputs[0]);
  if (!a.square())
    throw format_error("quasidet needs a square matrix");
  if (!o.pivot.empty()) {
    const auto [p, q] = parse_pivot(o.pivot, a.rows());
    const QuasidetResult r = quasideterminant_detailed(a, p, q);
    out << "quasidet[" << p + 1 << "," << q + 1 << "]: " << io::format_map(r.value) << "\n";
    report["pivot"] = {p + 1, q + 1};
    report["value"] = io::to_json(r.value);
    report["row_perm"] = perm_json(r.row_perm);
    report["col_perm"] = perm_json(r.col_perm);
    return;
  }
  const QuasidetMatrix m = quasideterminant_matrix(a);
  OrderedJson entries = OrderedJson::array();
  for (Index p = 0; p < m.size(); ++p) {
    OrderedJson row = OrderedJson::array();
    for (Index q = 0; q < m.size(); ++q) {
      out << "quasidet[" << p + 1 << "," << q + 1 << "]: ";
      if (m(p, q)) {
        out << io::format_map(*m(p, q)) << "\n";
        row.push_back(io::to_json(*m(p, q)));
      } else {
        out << "undefined\n";
        row.push_back(nullptr);
      }
    }
    entries.push_back(std::move(row));
  }
  report["quasideterminants"] = std::move(entries);
}

void mat_invert(const Options& o, std::ostream& out, OrderedJson& report) {
  require_inputs(o, 1, "mat-invert");
  const InverseResult r = rc_inverse_detailed(load_matrix(o.inputs[0]));
  out << "rc-inverse " << r.value.rows() << "x" << r.value.cols() << ":\n" << io::format_matrix(r.value);
  if (r.pivoted)
    out << "pivoted: rows " << perm_text(r.row_perm) << " cols " << perm_text(r.col_perm) << "\n";
  report["inverse"] = io::to_json(r.value);
  report["pivoted"] = r.pivoted;
  report["row_perm"] = perm_json(r.row_perm);
  report["col_perm"] = perm_json(r.col_perm);
}

void print_solution(std::ostream& out, const char* label, const std::vector<AlgElement>& x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    out << "solution[" << label << "]: x" << i + 1 << " = " << io::format_element(x[i]) << "\n";
}

void solve_cmd(const Options& o, std::ostream& out, OrderedJson& report) {
  require_inputs(o, 1, "solve");
  Method method;
  try {
    method = parse_method(o.method);
  } catch (const std::invalid_argument& e) {
    throw format_error(e.what());
  }
  const LinearSystem sys = io::parse_system(load(o.inputs[0]), base_dir(o.inputs[0]));
  const Classification cls = classify(sys);
  out << "status: " << (cls.nonsingular ? "Nonsingular" : "Singular") << " rank=" << cls.rank
      << " nullity=" << cls.nullity << "\n";
  report["method"] = std::string(to_string(method));

  if (!cls.nonsingular) {
    if (method != Method::quasidet) {
      const SolveReport red = solve_reduction(sys);
      report["reduction"] = io::to_json(red);
      if (red.consistent) {
        out << "consistent: yes\n";
        out << "particular: " << io::coords_json(red.particular).dump() << "\n";
        for (const auto& v : red.nullspace)
          out << "nullspace: " << io::coords_json(v).dump() << "\n";
      } else {
        out << "consistent: no\n";
      }
    }
    throw Failure{"Singular", "rank " + std::to_string(cls.rank) + ", nullity " + std::to_string(cls.nullity)};
  }

  std::optional<SolveReport> red, qd;
  if (method != Method::quasidet) {
    red = solve_reduction(sys);
    print_solution(out, "reduction", *red->solution);
    report["reduction"] = io::to_json(*red);
  }
  if (method != Method::reduction) {
    qd = solve_quasidet(sys);
    print_solution(out, "quasidet", *qd->solution);
    if (qd->pivoted)
      out << "pivoted: rows " << perm_text(qd->row_perm) << " cols " << perm_text(qd->col_perm) << "\n";
    out << "forms: " << (qd->forms_agree ? (*qd->forms_agree ? "agree" : "disagree") : "matrix form only") << "\n";
    report["quasidet"] = io::to_json(*qd);
  }
  out << "residual: zero\n";
  if (red && qd) {
    const bool agree = *red->solution == *qd->solution;
    report["agree"] = agree;
    if (!agree)
      throw Failure{"Disagree", "reduction and quasideterminant solutions differ"};
    out << "agree\n";
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with matrices of linear mappings over associative algebras"};
  app.require_subcommand(1);
  Options opt;

  struct Verb {
    const char* name;
    const char* help;
  };
  const std::vector<Verb> verbs = {
      {"check-algebra", "validate an algebra file or builtin:<name>"},
      {"elem-mul", "multiply elements given as element files, left to right"},
      {"map-apply", "apply a mapping file to an element file"},
      {"map-compose", "compose two mapping files (first after second)"},
      {"map-invert", "invert a mapping file"},
      {"mat-rcmul", "RC-product of two matrix files"},
      {"mat-crmul", "CR-product of two matrix files"},
      {"quasidet", "quasideterminant(s) of a square matrix file"},
      {"mat-invert", "RC-inverse of a square matrix file"},
      {"solve", "solve a system file"},
  };
  for (const auto& v : verbs) {
    CLI::App* sub = app.add_subcommand(v.name, v.help);
    sub->add_option("inputs", opt.inputs, "input files (algebra: path or builtin:<name>)")->required();
    sub->add_option("--out", opt.out, "write a JSON report to this path");
    if (std::string(v.name) == "solve")
      sub->add_option("--method", opt.method, "quasidet | reduction | both")->capture_default_str();
    if (std::string(v.name) == "quasidet")
      sub->add_option("--pivot", opt.pivot, "1-based position p,q; all positions when omitted");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string verb = app.get_subcommands().front()->get_name();
  std::ostringstream out;
  OrderedJson report;
  report["command"] = verb;
  int status = 0;
  try {
    if (verb == "check-algebra")
      check_algebra(opt, out, report);
    else if (verb == "elem-mul")
      elem_mul(opt, out, report);
    else if (verb == "map-apply")
      map_apply(opt, out, report);
    else if (verb == "map-compose")
      map_compose(opt, out, report);
    else if (verb == "map-invert")
      map_invert(opt, out, report);
    else if (verb == "mat-rcmul")
      mat_product(opt, out, report, true);
    else if (verb == "mat-crmul")
      mat_product(opt, out, report, false);
    else if (verb == "quasidet")
      quasidet(opt, out, report);
    else if (verb == "mat-invert")
      mat_invert(opt, out, report);
    else if (verb == "solve")
      solve_cmd(opt, out, report);
    report["status"] = "ok";
  } catch (const Failure& f) {
    out << "failure: " << f.reason << ": " << f.detail << "\n";
    report["status"] = "failure";
    report["reason"] = f.reason;
    status = 1;
  } catch (const math_error& e) {
    out << "failure: " << e.reason() << ": " << e.what() << "\n";
    report["status"] = "failure";
    report["reason"] = e.reason();
    status = 1;
  } catch (const std::exception& e) {
    std::cout << out.str();
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  std::cout << out.str();
  if (!opt.out.empty()) {
    std::ofstream f(opt.out);
    if (!f) {
      std::cerr << "error: cannot write '" << opt.out << "'\n";
      return 2;
    }
    f << report.dump(2) << "\n";
  }
  return status;
}
