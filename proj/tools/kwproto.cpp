// kwproto :: command-line driver
//
// Exit status: 0 success or pass, 1 verification failure (including inputs
// that fail a checked precondition), 2 usage, parse or input errors.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "kwproto/kwproto.hpp"

namespace {

using namespace kwproto;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FileParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return in;
}

template <class Parse>
auto load(const std::string& path, Parse parse) {
  auto in = open_input(path);
  try {
    return parse(in);
  } catch (const ParseError& e) {
    throw FileParseError(path + ":" + e.what());
  }
}

PartialMonotoneFunction load_function(const std::string& path) {
  return load(path, [](std::istream& in) { return io::parse_function(in); });
}
Protocol load_protocol(const std::string& path) {
  return load(path, [](std::istream& in) { return io::parse_protocol(in); });
}
InterpolationFormula load_cnf(const std::string& path) {
  return load(path, [](std::istream& in) { return io::parse_dimacs(in); });
}

// Writes to the -o file, or stdout when none was given.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

bool report_verification(const Protocol& p, const PartialMonotoneFunction& f, unsigned jobs, bool strict, std::ostream& os) {
  auto wf = check_wellformed(p);
  if (!wf.ok()) {
    for (const auto& issue : wf.issues) os << "malformed " << issue.message << '\n';
    return false;
  }
  VerifyOptions opt;
  opt.jobs = jobs;
  opt.strict_sinks = strict;
  auto report = verify_solves(p, f, opt);
  report.write(os);
  os << (report.passed() ? "PASS" : "FAIL") << " pairs=" << report.pairs_checked << " violations=" << report.violations.size() << '\n';
  return report.passed();
}

std::vector<RlinClause> rlin_axioms(const InterpolationFormula& cnf) { return translate_cnf(cnf.clauses); }

struct Bound {
  std::string name;
  Integer limit;
  Integer actual;
  std::string note;
  bool exact = false;  // actual must equal limit
};

int print_bounds(std::ostream& os, const std::vector<Bound>& bounds) {
  bool all = true;
  for (const auto& b : bounds) {
    bool ok = b.exact ? b.actual == b.limit : b.actual <= b.limit;
    all = all && ok;
    os << "bound " << b.name << ' ' << b.limit << ' ' << (ok ? "PASS" : "FAIL");
    if (!b.note.empty()) os << " (" << b.note << ')';
    os << '\n';
  }
  return all ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dag-like protocols for monotone Karchmer-Wigderson games"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("-o,--output", out_path, "Output file (default: stdout)");

  std::function<int()> action;
  app.fallthrough();
  auto command = [&](const char* name, const char* help) { return app.add_subcommand(name, help); };

  // check-function
  std::string fn_path;
  {
    auto* sub = command("check-function", "Check that zeros and ones are monotone-compatible");
    sub->add_option("function", fn_path, "Function file")->required();
    sub->callback([&] {
      action = [&] {
        auto f = load_function(fn_path);
        Output out(out_path);
        if (auto bad = check_monotone(f)) {
          out.stream() << "violation x=" << bad->x << " y=" << bad->y << '\n';
          return kFail;
        }
        out.stream() << "ok n=" << f.n() << " zeros=" << f.zeros().size() << " ones=" << f.ones().size() << '\n';
        return kPass;
      };
    });
  }

  // verify
  std::string proto_path;
  unsigned jobs = 1;
  bool strict = false;
  {
    auto* sub = command("verify", "Exhaustively check that a protocol solves the game for a function");
    sub->add_option("protocol", proto_path, "Protocol file")->required();
    sub->add_option("function", fn_path, "Function file")->required();
    sub->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
    sub->add_flag("--strict-sinks", strict, "Check stored sink labels on all input pairs (n <= 12)");
    sub->callback([&] {
      action = [&] {
        auto p = load_protocol(proto_path);
        auto f = load_function(fn_path);
        Output out(out_path);
        return report_verification(p, f, jobs, strict, out.stream()) ? kPass : kFail;
      };
    });
  }

  // make-fact1 / make-fact2
  for (int which : {1, 2}) {
    auto* sub = command(which == 1 ? "make-fact1" : "make-fact2",
                        which == 1 ? "Degree-n inequality protocol of size n+1" : "Degree-2 chain of conjunctions, size 2n-1");
    sub->add_option("function", fn_path, "Function file")->required();
    sub->callback([&, which] {
      action = [&, which] {
        auto f = load_function(fn_path);
        auto p = which == 1 ? fact_degree_n(f) : fact_chain(f);
        Output out(out_path);
        io::write_protocol(out.stream(), p);
        return kPass;
      };
    });
  }

  // normalize
  std::size_t width = 0;
  {
    auto* sub = command("normalize", "Replace table values by their ranks");
    sub->add_option("protocol", proto_path, "Protocol file")->required();
    sub->add_option("--width", width, "Minimum bit width");
    sub->callback([&] {
      action = [&] {
        auto n = rank_normalize(load_protocol(proto_path), width);
        Output out(out_path);
        io::write_protocol(out.stream(), n.protocol);
        std::cerr << "width " << n.width << '\n';
        return kPass;
      };
    });
  }

  // simulate / reduce-degree
  bool check = false;
  for (bool reduce : {false, true}) {
    auto* sub = reduce ? command("reduce-degree", "Equality protocol to degree-2 equality protocol")
                       : command("simulate", "Conjunction-of-inequalities protocol to degree-2 equality protocol");
    sub->add_option("protocol", proto_path, "Protocol file")->required();
    sub->add_option("function", fn_path, "Function file")->required();
    sub->add_option("--width", width, "Minimum bit width after normalization");
    sub->add_flag("--check", check, "Verify the input before and the output after");
    sub->callback([&, reduce] {
      action = [&, reduce] {
        auto p = load_protocol(proto_path);
        auto f = load_function(fn_path);
        SimulateOptions opt;
        opt.check = check;
        SimulationResult r;
        if (reduce) {
          r = degree_reduce_with_stats(p, f, width, opt).simulation;
        } else {
          auto n = rank_normalize(p, width);
          r = simulate_with_stats(n.protocol, f, n.width, opt);
        }
        Output out(out_path);
        io::write_protocol(out.stream(), r.protocol);
        std::cerr << "width " << r.width << " arity " << r.arity << " size " << r.protocol.size() << " trees " << r.tree_count << '\n';
        if (check) {
          std::ostringstream log;
          if (!report_verification(r.protocol, f, 1, false, log)) {
            std::cerr << log.str();
            return kFail;
          }
          std::cerr << "output verified\n";
        }
        return kPass;
      };
    });
  }

  // eq-to-conj2
  {
    auto* sub = command("eq-to-conj2", "Rewrite q=r as q<r+1 and -q<-r+1");
    sub->add_option("protocol", proto_path, "Protocol file")->required();
    sub->callback([&] {
      action = [&] {
        auto p = eq_to_conj2(load_protocol(proto_path));
        Output out(out_path);
        io::write_protocol(out.stream(), p);
        return kPass;
      };
    });
  }

  // rlin-check
  std::string cnf_path, proof_path;
  {
    auto* sub = command("rlin-check", "Check an R(LIN) refutation of a CNF");
    sub->add_option("cnf", cnf_path, "DIMACS file")->required();
    sub->add_option("proof", proof_path, "R(LIN) proof file")->required();
    sub->callback([&] {
      action = [&] {
        auto cnf = load_cnf(cnf_path);
        auto proof = load(proof_path, [](std::istream& in) { return io::parse_rlin(in); });
        auto result = check_refutation(rlin_axioms(cnf), proof);
        Output out(out_path);
        if (!result) {
          out.stream() << "error";
          if (result.line) out.stream() << " line " << *result.line;
          out.stream() << ": " << result.reason << '\n';
          return kFail;
        }
        out.stream() << "ok lines=" << proof.size() << '\n';
        return kPass;
      };
    });
  }

  // rlin-compile
  bool closure = false;
  {
    auto* sub = command("rlin-compile", "Compile an R(LIN) refutation of phi(x,y) & psi(x,z) into an equality protocol");
    sub->add_option("cnf", cnf_path, "DIMACS file with roles and phi count")->required();
    sub->add_option("proof", proof_path, "R(LIN) proof file")->required();
    sub->add_option("function", fn_path, "Function file")->required();
    sub->add_flag("--closure", closure, "Use the downward/upward closure of the function's zeros/ones");
    sub->add_flag("--check", check, "Verify the compiled protocol");
    sub->callback([&] {
      action = [&] {
        auto cnf = load_cnf(cnf_path);
        auto proof = load(proof_path, [](std::istream& in) { return io::parse_rlin(in); });
        auto f = load_function(fn_path);
        if (closure)
          f = PartialMonotoneFunction(f.n(), downward_closure(f.zeros(), f.n()), upward_closure(f.ones(), f.n()));
        auto p = compile_interpolant(translate_cnf(cnf.phi()), translate_cnf(cnf.psi()), proof, cnf.roles, f);
        Output out(out_path);
        io::write_protocol(out.stream(), p);
        if (check) {
          std::ostringstream log;
          if (!report_verification(p, f, 1, false, log)) {
            std::cerr << log.str();
            return kFail;
          }
          std::cerr << "output verified\n";
        }
        return kPass;
      };
    });
  }

  // gen-formula
  bool split = false;
  {
    auto* sub = command("gen-formula", "Selection encoding phi(x,y) & psi(x,z) of a function");
    sub->add_option("function", fn_path, "Function file")->required();
    sub->add_flag("--split", split, "Split psi clauses to at most one x-literal each");
    sub->callback([&] {
      action = [&] {
        auto enc = selection_encode(load_function(fn_path));
        auto formula = split ? split_formula(enc.formula) : enc.formula;
        Output out(out_path);
        io::write_dimacs(out.stream(), formula);
        std::cerr << "closure zeros=" << enc.closure.zeros().size() << " ones=" << enc.closure.ones().size() << '\n';
        return kPass;
      };
    });
  }

  // res-refute
  std::size_t budget = 100000;
  {
    auto* sub = command("res-refute", "Resolution refutation by saturation");
    sub->add_option("cnf", cnf_path, "DIMACS file")->required();
    sub->add_option("--budget", budget, "Maximum number of generated clauses");
    sub->callback([&] {
      action = [&] {
        auto cnf = load_cnf(cnf_path);
        SaturationResult r;
        try {
          r = saturation_refute(cnf.clauses, budget);
        } catch (const BudgetError& e) {
          std::cerr << "budget: " << e.what() << '\n';
          return kFail;
        }
        Output out(out_path);
        if (r.refutation) {
          io::write_resolution(out.stream(), *r.refutation);
          return kPass;
        }
        out.stream() << "sat";
        for (std::size_t v = 1; v < r.model->size(); ++v) out.stream() << ' ' << ((*r.model)[v] ? "" : "-") << v;
        out.stream() << " 0\n";
        return kFail;
      };
    });
  }

  // res-to-rlin
  {
    auto* sub = command("res-to-rlin", "Replay a resolution refutation in R(LIN)");
    sub->add_option("cnf", cnf_path, "DIMACS file")->required();
    sub->add_option("proof", proof_path, "Resolution proof file")->required();
    sub->callback([&] {
      action = [&] {
        auto cnf = load_cnf(cnf_path);
        auto proof = load(proof_path, [](std::istream& in) { return io::parse_resolution(in); });
        auto rlin = resolution_to_rlin(cnf.clauses, proof);
        Output out(out_path);
        io::write_rlin(out.stream(), rlin);
        return kPass;
      };
    });
  }

  // stats
  std::string from_path, mode = "none";
  {
    auto* sub = command("stats", "Size, degree, and the bounds that apply to a constructed protocol");
    sub->add_option("protocol", proto_path, "Protocol file")->required();
    sub->add_option("--from", from_path, "Input protocol the construction started from");
    sub->add_option("--mode", mode, "Construction: none, fact1, fact2, simulate, reduce-degree")
        ->check(CLI::IsMember({"none", "fact1", "fact2", "simulate", "reduce-degree"}));
    sub->add_option("--width", width, "Minimum bit width used by the construction");
    sub->callback([&] {
      action = [&] {
        auto p = load_protocol(proto_path);
        Output out(out_path);
        std::ostream& os = out.stream();
        os << "size " << p.size() << "\ndegree " << p.degree() << "\nmax-out-degree " << p.max_out_degree() << "\nedges "
           << p.edge_count() << '\n';
        std::vector<Bound> bounds;
        const Integer size = p.size();
        if (mode == "fact1") {
          bounds.push_back({"n+1", Integer(p.n() + 1), size, "exact", true});
        } else if (mode == "fact2") {
          bounds.push_back({"2n-1", Integer(2 * p.n() - 1), size, "exact", true});
        } else if (mode == "simulate" || mode == "reduce-degree") {
          if (from_path.empty()) throw UsageError("--mode " + mode + " needs --from");
          auto from = load_protocol(from_path);
          auto n = rank_normalize(mode == "simulate" ? from : eq_to_conj2(from), width);
          auto acc = size_accounting(n.protocol, n.width);
          os << "width " << acc.w << "\narity " << acc.c << "\nsimulated-size " << acc.s << "\nsimulated-degree " << acc.d << '\n';
          bounds.push_back({"degree-2", 2, Integer(p.max_out_degree()), ""});
          bounds.push_back({"exact-recursion", acc.exact_total, size, ""});
          bounds.push_back({"closed-form", acc.closed_form_total, size,
                            acc.closed_form_valid ? "" : "w < 10, outside the bound's stated range"});
        }
        return print_bounds(os, bounds);
      };
    });
  }

  // export-dot
  {
    auto* sub = command("export-dot", "Graphviz rendering");
    sub->add_option("protocol", proto_path, "Protocol file")->required();
    sub->callback([&] {
      action = [&] {
        auto p = load_protocol(proto_path);
        Output out(out_path);
        io::export_dot(out.stream(), p);
        return kPass;
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return action();
  } catch (const FileParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
    return kFail;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kUsage;
  }
}
