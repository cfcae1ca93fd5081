#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "umk/audit.hpp"
#include "umk/completion.hpp"
#include "umk/error.hpp"
#include "umk/homotopy.hpp"
#include "umk/mennicke.hpp"
#include "umk/parse.hpp"
#include "umk/starop.hpp"
#include "umk/workspace.hpp"

using namespace umk;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string ring, input, format = "text", report;
  std::uint64_t seed = 0;
  std::size_t budget = kDefaultSearchBudget;
  std::size_t solve_budget = kDefaultGroebnerBudget;
  std::size_t ring_cap = kDefaultRingCap;
  std::uint64_t enum_cap = kDefaultEnumerationCap;
  bool timing = false;
};

struct Args {
  std::string row, mat, v, w, x, y, z, left, right, inverse, root, mode = "sq3", what = "all",
      witness;
  std::size_t n = 3, m = 1;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string strip_comments(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (!trim(line).empty()) out += trim(line) + "\n";
  }
  return out;
}

class Session {
 public:
  explicit Session(const Globals& g, bool budget_set, bool seed_set) : g_(g) {
    if (!g.input.empty()) ws_ = parse_workspace(read_file(g.input));
    opts_.seed = g.seed;
    opts_.budget = g.budget;
    opts_.groebner_budget = g.solve_budget;
    if (ws_.seed && !seed_set) opts_.seed = *ws_.seed;
    if (ws_.budget && !budget_set) opts_.budget = *ws_.budget;
  }

  const SearchOptions& opts() const { return opts_; }
  const Globals& globals() const { return g_; }

  // --ring names a workspace ring, a ring file, or an inline descriptor; without it the ring
  // of the first named object, or the only ring of the workspace.
  RingHandle ring(std::initializer_list<std::string> specs = {}) {
    if (ring_) return ring_;
    if (!g_.ring.empty()) {
      ring_ = resolve_ring(g_.ring);
    } else {
      for (const auto& s : specs)
        if (ws_.objects.count(s)) return ring_ = ws_.objects.at(s).ring();
      if (ws_.rings.size() == 1) return ring_ = ws_.rings.begin()->second;
      throw UsageError("--ring is required");
    }
    return ring_;
  }

  Matrix row(const std::string& spec, const char* what) {
    Matrix M = object(spec, what, true);
    if (M.rows() != 1) throw UsageError(std::string(what) + " must be a row");
    return M;
  }
  Matrix matrix(const std::string& spec, const char* what) { return object(spec, what, false); }

 private:
  RingHandle resolve_ring(const std::string& spec) {
    if (ws_.rings.count(spec)) return ws_.rings.at(spec);
    if (std::filesystem::is_regular_file(spec)) {
      std::string body = strip_comments(read_file(spec));
      if (body.rfind("ring ", 0) == 0 || body.find("\nring ") != std::string::npos) {
        Workspace ws = parse_workspace(body);
        if (ws.rings.size() != 1)
          throw UsageError(spec + " defines " + std::to_string(ws.rings.size()) +
                           " rings; load it with --input and name one with --ring");
        return ws.rings.begin()->second;
      }
      return make_ring(trim(body));
    }
    return make_ring(spec);
  }

  Matrix object(const std::string& spec, const char* what, bool row) {
    if (spec.empty()) throw UsageError(std::string("missing ") + what);
    if (ws_.objects.count(spec)) {
      const Matrix& M = ws_.objects.at(spec);
      require_same_ring(ring({spec}), M.ring());
      return M;
    }
    RingHandle R = ring();
    return row ? parse_row(R, spec) : parse_matrix(R, spec);
  }

  Globals g_;
  Workspace ws_;
  SearchOptions opts_;
  RingHandle ring_;
};

struct Outcome {
  json body;
  int status = 0;
  std::string text;     // replaces the generic rendering when set
  std::string summary;  // printed instead of the text when --report is given
};

std::string render(const json& j) {
  std::string s;
  for (const auto& [key, value] : j.items()) {
    if (value.is_string()) {
      const std::string& v = value.get_ref<const std::string&>();
      if (v.find('\n') != std::string::npos) s += key + ":\n" + v + (v.back() == '\n' ? "" : "\n");
      else s += key + ": " + v + "\n";
    } else if (value.is_array()) {
      s += key + ":\n";
      for (const auto& item : value)
        s += "  " + (item.is_string() ? item.get<std::string>() : item.dump()) + "\n";
    } else {
      s += key + ": " + value.dump() + "\n";
    }
  }
  return s;
}

json lines(const std::vector<std::string>& v) { return json(v); }

// --- subcommands ---------------------------------------------------------------------------

Outcome check_row(Session& s, const Args& a) {
  Matrix v = s.row(a.row, "--row");
  auto cert = row_certificate(v, s.opts().groebner_budget);
  Outcome o;
  o.body["ring"] = v.ring()->descriptor();
  o.body["row"] = v.to_string();
  o.body["unimodular"] = cert.has_value();
  if (cert) o.body["inverse"] = cert->N().to_string();
  o.status = cert ? 0 : 1;
  return o;
}

Outcome right_inverse(Session& s, const Args& a) {
  Matrix M = s.matrix(a.mat, "--mat");
  auto cert = M.rows() == 1 ? row_certificate(M, s.opts().groebner_budget)
                            : matrix_right_inverse(M, s.opts().groebner_budget);
  Outcome o;
  o.body["ring"] = M.ring()->descriptor();
  o.body["matrix"] = M.to_string();
  o.body["unimodular"] = cert.has_value();
  if (cert) o.body["inverse"] = cert->N().to_string();
  o.status = cert ? 0 : 1;
  return o;
}

void describe_pair(json& j, const NormalizedPair& p) {
  j["x"] = p.x.to_string();
  j["y"] = p.y.to_string();
  j["tail"] = format_entries(p.tail);
  j["v_normalized"] = p.v_normalized().to_string();
  j["w_normalized"] = p.w_normalized().to_string();
  j["eps"] = serialize(p.eps);
  j["delta"] = serialize(p.delta);
}

Outcome normalize_pair_cmd(Session& s, const Args& a) {
  s.ring({a.v, a.w});
  auto p = normalize_pair(s.row(a.v, "--v"), s.row(a.w, "--w"), s.opts());
  Outcome o;
  describe_pair(o.body, p);
  return o;
}

Outcome wms_mul_cmd(Session& s, const Args& a) {
  s.ring({a.v, a.w});
  auto p = wms_mul(s.row(a.v, "--v"), s.row(a.w, "--w"), s.opts());
  Outcome o;
  o.body["product"] = p.product.M().to_string();
  o.body["inverse"] = p.product.N().to_string();
  describe_pair(o.body, p.pair);
  return o;
}

Outcome wms_inverse_cmd(Session& s, const Args& a) {
  s.ring({a.row});
  Matrix v = s.row(a.row, "--row");
  SplitUnimodular cert = a.inverse.empty()
                             ? require_unimodular(v, "--row", s.opts().groebner_budget)
                             : SplitUnimodular(v, s.row(a.inverse, "--inverse").transpose());
  auto p = wms_inverse(cert, s.opts());
  Outcome o;
  o.body["row"] = v.to_string();
  o.body["certificate"] = cert.N().to_string();
  o.body["wms_inverse"] = p.product.M().to_string();
  o.body["inverse"] = p.product.N().to_string();
  return o;
}

json describe_star(const StarForm& f) {
  SplitUnimodular T = star(f);
  json j;
  j["left"] = f.left().to_string();
  j["right"] = f.right().to_string();
  j["T"] = T.M().to_string();
  j["T_inverse"] = T.N().to_string();
  j["row1"] = row1(T.M()).M().to_string();
  return j;
}

Outcome star_cmd(Session& s, const Args& a) {
  s.ring({a.x, a.y, a.z});
  Matrix X = s.matrix(a.x, "--x"), Y = s.matrix(a.y, "--y");
  Matrix Z = a.z.empty() ? Matrix(X.ring(), 2, 0) : s.matrix(a.z, "--z");
  Outcome o;
  o.body = describe_star(make_star_form(X, Y, Z));
  return o;
}

Outcome normalize_star_cmd(Session& s, const Args& a) {
  s.ring({a.left, a.right});
  StarForm f = normalize_for_star(s.matrix(a.left, "--left"), s.matrix(a.right, "--right"), s.opts());
  Outcome o;
  o.body["form"] = serialize(f);
  json star_part = describe_star(f);
  for (auto& [k, v] : star_part.items()) o.body[k] = v;
  return o;
}

Outcome row1_cmd(Session& s, const Args& a) {
  s.ring({a.mat});
  auto r = row1(s.matrix(a.mat, "--mat"));
  Outcome o;
  o.body["row"] = r.M().to_string();
  o.body["inverse"] = r.N().to_string();
  return o;
}

Outcome stabilize_cmd(Session& s, const Args& a) {
  s.ring({a.row});
  auto r = stabilize(s.row(a.row, "--row"));
  Outcome o;
  o.body["matrix"] = r.M().to_string();
  o.body["inverse"] = r.N().to_string();
  return o;
}

Outcome complete_cmd(Session& s, const Args& a) {
  s.ring({a.row});
  Matrix v = s.row(a.row, "--row");
  const RingHandle& R = v.ring();
  CompletionResult c = [&] {
    if (a.mode == "bass-even") {
      SplitUnimodular cert = a.inverse.empty()
                                 ? require_unimodular(v, "--row", s.opts().groebner_budget)
                                 : SplitUnimodular(v, s.row(a.inverse, "--inverse").transpose());
      return bass_even_second_row(cert);
    }
    if (a.root.empty()) throw UsageError("--root is required for mode " + a.mode);
    RingElement root = R->parse(a.root);
    if (a.mode == "sq3") return complete_square_3(v, root, s.opts().groebner_budget);
    return second_row_odd(v, root, s.opts().groebner_budget);
  }();
  Outcome o;
  o.body["mode"] = a.mode;
  o.body["row"] = c.input.to_string();
  o.body["matrix"] = c.matrix.to_string();
  o.body["inverse"] = c.inverse.to_string();
  if (c.matrix.rows() == c.matrix.cols()) o.body["determinant"] = determinant(c.matrix).to_string();
  o.body["log"] = lines(c.log);
  return o;
}

json report_json(const AuditReport& r, bool timing) {
  json j;
  j["what"] = to_string(r.what);
  j["ring"] = r.ring;
  j["n"] = r.n;
  j["instances"] = r.instances();
  j["violations"] = r.violations;
  j["unknown"] = r.unknown;
  j["informative"] = r.informative;
  if (timing) j["runtime_s"] = r.seconds;
  json ls = json::array();
  for (const auto& l : r.lines) {
    json e;
    e["tag"] = l.tag;
    e["rows"] = l.rows;
    e["verdict"] = to_string(l.verdict);
    if (!l.detail.empty()) e["detail"] = l.detail;
    ls.push_back(std::move(e));
  }
  j["lines"] = std::move(ls);
  return j;
}

Outcome run_audits(Session& s, const std::vector<AuditKind>& kinds, std::size_t n) {
  RingHandle R = s.ring();
  AuditOptions opts{s.opts(), s.globals().ring_cap, s.globals().enum_cap};
  Outcome o;
  json reports = json::array();
  std::string full, summaries;
  bool violations = false, unknown = false;
  for (auto k : kinds) {
    if (n < 4 && (k == AuditKind::StarWelldef || k == AuditKind::Row1Hom) && kinds.size() > 1)
      continue;
    AuditReport r = audit(R, n, k, opts);
    violations |= r.violations > 0 && !r.informative;
    unknown |= r.unknown > 0;
    reports.push_back(report_json(r, s.globals().timing));
    full += format_text(r, s.globals().timing);
    summaries += r.summary() + "\n";
  }
  o.body = kinds.size() == 1 ? reports.front() : json{{"reports", reports}};
  o.text = full;
  o.summary = summaries;
  o.status = violations ? 1 : unknown ? 2 : 0;
  return o;
}

Outcome audit_cmd(Session& s, const Args& a) {
  if (a.what == "all") return run_audits(s, all_audit_kinds(), a.n);
  auto k = parse_audit_kind(a.what);
  if (!k) throw UsageError("unknown audit '" + a.what + "'");
  return run_audits(s, {*k}, a.n);
}

Outcome verify_homotopy_cmd(Session&, const Args& a) {
  if (a.witness.empty()) throw UsageError("missing --witness");
  WitnessFile wf = parse_witness(read_file(a.witness));
  const RingHandle& A = wf.witness.base;
  auto endpoint = [&](const std::string& spec, const std::optional<Matrix>& declared,
                      const char* what) {
    if (!spec.empty()) return parse_row(A, spec);
    if (!declared) throw UsageError(std::string("witness declares no ") + what + "; pass --" + what);
    return *declared;
  };
  Matrix v = endpoint(a.v, wf.v, "v"), w = endpoint(a.w, wf.w, "w");
  bool ok = verify_homotopy(wf.witness, v, w);
  Outcome o;
  o.body["ring"] = A->descriptor();
  o.body["z"] = wf.witness.z.to_string();
  o.body["certified"] = wf.witness.cert.has_value();
  o.body["z0"] = wf.witness.start().to_string();
  o.body["z1"] = wf.witness.end().to_string();
  o.body["v"] = v.to_string();
  o.body["w"] = w.to_string();
  o.body["valid"] = ok;
  o.status = ok ? 0 : 1;
  return o;
}

Outcome orbit_table_cmd(Session& s, const Args& a) {
  RingHandle R = s.ring();
  if (a.m < 1 || a.m > 2) throw UsageError("--m must be 1 or 2");
  OrbitDecider dec(OracleMode::Auto, s.globals().ring_cap, s.globals().enum_cap);
  const FiniteRingTable* F = dec.table(R);
  if (!F) {
    if (!finite_ring_size(R)) throw Unsupported("orbit tables need a finite ring");
    throw CapExceeded("ring is over the ring cap");
  }
  const OrbitTable* T = dec.orbits(R, a.m, a.n);
  if (!T) throw CapExceeded("Um_{" + std::to_string(a.m) + "," + std::to_string(a.n) +
                            "} is over the enumeration cap");
  Outcome o;
  o.body["ring"] = R->descriptor();
  o.body["m"] = a.m;
  o.body["n"] = a.n;
  o.body["elements"] = T->elements().size();
  o.body["orbit_count"] = T->orbit_count();
  o.body["generators"] = T->generator_count();
  json orbits = json::array();
  for (std::size_t k = 0; k < T->orbit_count(); ++k)
    orbits.push_back(decode_matrix(*F, T->representative(static_cast<int>(k)), a.m, a.n).to_string() +
                     " size " + std::to_string(T->orbit_sizes()[k]));
  o.body["orbits"] = std::move(orbits);
  return o;
}

int emit(const Session& s, Outcome o, double seconds) {
  const Globals& g = s.globals();
  if (g.timing && !o.body.contains("runtime_s")) o.body["runtime_s"] = seconds;
  const bool as_json = g.format == "json";
  std::string out = as_json ? o.body.dump(2) + "\n" : o.text.empty() ? render(o.body) : o.text;
  if (!g.report.empty()) {
    std::ofstream f(g.report);
    if (!f) throw UsageError("cannot write " + g.report);
    f << out;
    if (!as_json && !o.summary.empty()) out = o.summary;
  }
  std::cout << out;
  return o.status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unimodular rows, elementary orbits and Mennicke symbols"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  Args a;
  app.add_option("--ring", g.ring, "ring name, ring file, or inline descriptor");
  app.add_option("--input", g.input, "workspace file with named rings, rows and matrices");
  auto* seed_opt = app.add_option("--seed", g.seed, "seed for randomized search order");
  auto* budget_opt = app.add_option("--budget", g.budget, "search budget per step");
  app.add_option("--solve-budget", g.solve_budget, "Groebner budget for certificates");
  app.add_option("--format", g.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--report", g.report, "also write the output to this path");
  app.add_option("--ring-cap", g.ring_cap, "largest finite ring the oracle tabulates");
  app.add_option("--enum-cap", g.enum_cap, "largest enumeration the oracle attempts");
  app.add_flag("--timing", g.timing, "include runtimes in the output");

  using Handler = Outcome (*)(Session&, const Args&);
  std::vector<std::pair<CLI::App*, Handler>> subs;
  auto sub = [&](const char* name, const char* help, Handler h) {
    auto* c = app.add_subcommand(name, help);
    subs.emplace_back(c, h);
    return c;
  };

  auto* c = sub("check-row", "certify a row and print a right inverse", check_row);
  c->add_option("--row", a.row)->required();
  c = sub("right-inverse", "certify a matrix and print a right inverse", right_inverse);
  c->add_option("--mat", a.mat)->required();
  c = sub("normalize-pair", "bring two rows to (x, tail), (y, tail) with x + y = 1",
          normalize_pair_cmd);
  c->add_option("--v", a.v)->required();
  c->add_option("--w", a.w)->required();
  c = sub("wms-mul", "weak Mennicke symbol product of two rows", wms_mul_cmd);
  c->add_option("--v", a.v)->required();
  c->add_option("--w", a.w)->required();
  c = sub("wms-inverse", "weak Mennicke symbol inverse of a row", wms_inverse_cmd);
  c->add_option("--row", a.row)->required();
  c->add_option("--inverse", a.inverse, "right inverse of the row, written as a row");
  c = sub("star", "star of shaped blocks (X|Y|Z), (I-X|Y|Z)", star_cmd);
  c->add_option("--x", a.x)->required();
  c->add_option("--y", a.y)->required();
  c->add_option("--z", a.z);
  c = sub("normalize-star", "shape two 2 x n matrices for the star operation", normalize_star_cmd);
  c->add_option("--left", a.left)->required();
  c->add_option("--right", a.right)->required();
  c = sub("row1", "first row of a 2 x n unimodular matrix", row1_cmd);
  c->add_option("--mat", a.mat)->required();
  c = sub("stabilize", "the 2 x (n+1) matrix with rows (1, 0) and (0, v)", stabilize_cmd);
  c->add_option("--row", a.row)->required();
  c = sub("complete", "explicit completions", complete_cmd);
  c->add_option("--row", a.row)->required();
  c->add_option("--mode", a.mode)->check(CLI::IsMember({"sq3", "odd", "bass-even"}));
  c->add_option("--root", a.root, "a with first entry a^2");
  c->add_option("--inverse", a.inverse, "right inverse for bass-even, written as a row");
  c = sub("audit", "exhaustive relation audits over a finite ring", audit_cmd);
  c->add_option("--n", a.n)->required();
  c->add_option("--what", a.what, "audit tag or all");
  c = sub("probe-star-welldef", "search for star outcomes that depend on the representatives",
          [](Session& s, const Args& x) { return run_audits(s, {AuditKind::StarWelldef}, x.n); });
  c->add_option("--n", a.n)->required();
  c = sub("verify-homotopy", "check a homotopy witness file", verify_homotopy_cmd);
  c->add_option("--witness", a.witness)->required();
  c->add_option("--v", a.v, "start row, overriding the witness file");
  c->add_option("--w", a.w, "end row, overriding the witness file");
  c = sub("orbit-table", "orbits of Um_{m,n} over a finite ring", orbit_table_cmd);
  c->add_option("--m", a.m);
  c->add_option("--n", a.n)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  try {
    Session s(g, budget_opt->count() > 0, seed_opt->count() > 0);
    for (auto& [cmd, handler] : subs) {
      if (!cmd->parsed()) continue;
      auto t0 = std::chrono::steady_clock::now();
      Outcome o = handler(s, a);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return emit(s, std::move(o), secs);
    }
    return 3;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 2;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 1;
  } catch (const DimensionGate& e) {
    std::cerr << "dimension gate: " << e.what() << "\n";
    return 3;
  } catch (const NotUnimodularError& e) {
    std::cerr << "not unimodular: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 3;
  }
}
