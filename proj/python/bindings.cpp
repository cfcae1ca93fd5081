#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "umk/audit.hpp"
#include "umk/completion.hpp"
#include "umk/error.hpp"
#include "umk/homotopy.hpp"
#include "umk/starop.hpp"

namespace py = pybind11;
using namespace umk;

namespace {

// Matrices cross the boundary in their text form, "[[a, b], [c, d]]" or "[a, b]".
struct PyRing {
  RingHandle h;
};

Matrix mat(const PyRing& R, const std::string& text) { return parse_matrix(R.h, text); }
Matrix row(const PyRing& R, const std::string& text) { return parse_row(R.h, text); }

SearchOptions search(std::uint64_t seed, std::size_t budget) {
  SearchOptions o;
  o.seed = seed;
  o.budget = budget;
  return o;
}

py::dict split(const SplitUnimodular& s) {
  py::dict d;
  d["M"] = s.M().to_string();
  d["N"] = s.N().to_string();
  return d;
}

py::dict pair_dict(const NormalizedPair& p) {
  py::dict d;
  d["v"] = p.v_normalized().to_string();
  d["w"] = p.w_normalized().to_string();
  d["x"] = p.x.to_string();
  d["y"] = p.y.to_string();
  std::vector<std::string> tail;
  for (const auto& t : p.tail) tail.push_back(t.to_string());
  d["tail"] = tail;
  d["eps"] = serialize(p.eps);
  d["delta"] = serialize(p.delta);
  return d;
}

py::dict product_dict(const WmsProduct& p) {
  py::dict d;
  d["product"] = p.product.M().to_string();
  d["inverse"] = p.product.N().to_string();
  d["pair"] = pair_dict(p.pair);
  return d;
}

py::dict star_dict(const StarForm& f) {
  SplitUnimodular T = star(f);
  py::dict d;
  d["left"] = f.left().to_string();
  d["right"] = f.right().to_string();
  d["T"] = T.M().to_string();
  d["T_inverse"] = T.N().to_string();
  d["row1"] = row1(T.M()).M().to_string();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Unimodular rows, weak Mennicke symbols and the star operation";

  auto base = py::register_exception<Error>(m, "UmkError");
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<RingMismatch>(m, "RingMismatch", base);
  py::register_exception<ShapeError>(m, "ShapeError", base);
  py::register_exception<DimensionGate>(m, "DimensionGate", base);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base);
  py::register_exception<NotUnimodularError>(m, "NotUnimodular", base);
  py::register_exception<PreconditionError>(m, "PreconditionError", base);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", base);
  py::register_exception<CapExceeded>(m, "CapExceeded", base);
  py::register_exception<Unsupported>(m, "Unsupported", base);

  py::class_<PyRing>(m, "Ring")
      .def(py::init([](const std::string& d) { return PyRing{make_ring(d)}; }), py::arg("descriptor"))
      .def_static("zmod", [](std::uint64_t q) { return PyRing{make_zmod(q)}; })
      .def_property_readonly("descriptor", [](const PyRing& R) { return R.h->descriptor(); })
      .def_property_readonly("sdim", [](const PyRing& R) { return R.h->sdim(); })
      .def_property_readonly("is_finite", [](const PyRing& R) { return R.h->is_finite(); })
      .def("normalize", [](const PyRing& R, const std::string& f) { return R.h->parse(f).to_string(); })
      .def("__repr__", [](const PyRing& R) { return "Ring('" + R.h->descriptor() + "')"; });

  m.def(
      "row_certificate",
      [](const PyRing& R, const std::string& v) -> std::optional<py::dict> {
        auto c = row_certificate(row(R, v));
        if (!c) return std::nullopt;
        return split(*c);
      },
      py::arg("ring"), py::arg("row"));

  m.def(
      "right_inverse",
      [](const PyRing& R, const std::string& M) -> std::optional<std::string> {
        auto c = matrix_right_inverse(mat(R, M));
        if (!c) return std::nullopt;
        return c->N().to_string();
      },
      py::arg("ring"), py::arg("matrix"));

  m.def("verify_split",
        [](const PyRing& R, const std::string& M, const std::string& N) {
          return verify_split(mat(R, M), mat(R, N));
        });

  m.def(
      "normalize_pair",
      [](const PyRing& R, const std::string& v, const std::string& w, std::uint64_t seed,
         std::size_t budget) { return pair_dict(normalize_pair(row(R, v), row(R, w), search(seed, budget))); },
      py::arg("ring"), py::arg("v"), py::arg("w"), py::arg("seed") = 0,
      py::arg("budget") = kDefaultSearchBudget);

  m.def(
      "wms_mul",
      [](const PyRing& R, const std::string& v, const std::string& w, std::uint64_t seed,
         std::size_t budget) { return product_dict(wms_mul(row(R, v), row(R, w), search(seed, budget))); },
      py::arg("ring"), py::arg("v"), py::arg("w"), py::arg("seed") = 0,
      py::arg("budget") = kDefaultSearchBudget);

  m.def(
      "wms_inverse",
      [](const PyRing& R, const std::string& v, std::uint64_t seed, std::size_t budget) {
        return product_dict(wms_inverse(require_unimodular(row(R, v), "row"), search(seed, budget)));
      },
      py::arg("ring"), py::arg("row"), py::arg("seed") = 0, py::arg("budget") = kDefaultSearchBudget);

  m.def(
      "star",
      [](const PyRing& R, const std::string& X, const std::string& Y, const std::string& Z) {
        Matrix z = Z.empty() ? Matrix(R.h, 2, 0) : mat(R, Z);
        return star_dict(make_star_form(mat(R, X), mat(R, Y), z));
      },
      py::arg("ring"), py::arg("x"), py::arg("y"), py::arg("z") = "");

  m.def(
      "normalize_star",
      [](const PyRing& R, const std::string& left, const std::string& right, std::uint64_t seed,
         std::size_t budget) {
        StarForm f = normalize_for_star(mat(R, left), mat(R, right), search(seed, budget));
        py::dict d = star_dict(f);
        d["form"] = serialize(f);
        return d;
      },
      py::arg("ring"), py::arg("left"), py::arg("right"), py::arg("seed") = 0,
      py::arg("budget") = kDefaultSearchBudget);

  m.def("row1", [](const PyRing& R, const std::string& M) { return split(row1(mat(R, M))); });
  m.def("stabilize", [](const PyRing& R, const std::string& v) { return split(stabilize(row(R, v))); });

  m.def(
      "complete",
      [](const PyRing& R, const std::string& v, const std::string& mode, const std::string& root) {
        Matrix r = row(R, v);
        CompletionResult c = [&] {
          if (mode == "bass-even") return bass_even_second_row(require_unimodular(r, "row"));
          if (mode == "sq3") return complete_square_3(r, R.h->parse(root));
          if (mode == "odd") return second_row_odd(r, R.h->parse(root));
          throw PreconditionError("unknown completion mode '" + mode + "'");
        }();
        py::dict d;
        d["matrix"] = c.matrix.to_string();
        d["inverse"] = c.inverse.to_string();
        if (c.matrix.rows() == c.matrix.cols()) d["determinant"] = determinant(c.matrix).to_string();
        d["log"] = c.log;
        return d;
      },
      py::arg("ring"), py::arg("row"), py::arg("mode"), py::arg("root") = "");

  m.def(
      "same_orbit",
      [](const PyRing& R, const std::string& a, const std::string& b, std::uint64_t seed,
         std::size_t budget) {
        OrbitDecider dec;
        return to_string(dec.same_orbit(mat(R, a), mat(R, b), search(seed, budget)));
      },
      py::arg("ring"), py::arg("a"), py::arg("b"), py::arg("seed") = 0,
      py::arg("budget") = kDefaultSearchBudget);

  m.def(
      "audit",
      [](const PyRing& R, std::size_t n, const std::string& what) {
        auto k = parse_audit_kind(what);
        if (!k) throw PreconditionError("unknown audit '" + what + "'");
        AuditReport r = audit(R.h, n, *k);
        py::dict d;
        d["what"] = to_string(r.what);
        d["instances"] = r.instances();
        d["violations"] = r.violations;
        d["unknown"] = r.unknown;
        d["informative"] = r.informative;
        d["summary"] = r.summary();
        return d;
      },
      py::arg("ring"), py::arg("n"), py::arg("what"));

  m.def("audit_kinds", [] {
    std::vector<std::string> out;
    for (auto k : all_audit_kinds()) out.push_back(to_string(k));
    return out;
  });

  m.def(
      "verify_homotopy",
      [](const std::string& text, const std::string& v, const std::string& w) {
        WitnessFile wf = parse_witness(text);
        const RingHandle& A = wf.witness.base;
        Matrix a = v.empty() ? wf.v.value() : parse_row(A, v);
        Matrix b = w.empty() ? wf.w.value() : parse_row(A, w);
        return verify_homotopy(wf.witness, a, b);
      },
      py::arg("witness"), py::arg("v") = "", py::arg("w") = "");
}
