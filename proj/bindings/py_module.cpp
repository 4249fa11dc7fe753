#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "soccover/covering.hpp"
#include "soccover/io.hpp"
#include "soccover/lifts.hpp"
#include "soccover/slack.hpp"
#include "soccover/soc_core.hpp"
#include "soccover/support.hpp"

namespace py = pybind11;
using namespace soccover;

namespace pybind11::detail {

// Exact rationals cross the boundary as fractions.Fraction (ints accepted);
// floats deliberately do not match, so they select the floating overloads.
template <>
struct type_caster<Rat> {
  PYBIND11_TYPE_CASTER(Rat, const_name("Fraction"));

  bool load(handle src, bool) {
    if (py::isinstance<py::float_>(src)) return false;
    if (py::isinstance<py::int_>(src)) {
      value = rat_from_string(py::cast<std::string>(py::str(src)));
      return true;
    }
    if (py::hasattr(src, "numerator") && py::hasattr(src, "denominator")) {
      const std::string num = py::cast<std::string>(py::str(src.attr("numerator")));
      const std::string den = py::cast<std::string>(py::str(src.attr("denominator")));
      value = rat_from_string(num + "/" + den);
      return true;
    }
    if (py::isinstance<py::str>(src)) {
      value = rat_from_string(py::cast<std::string>(src));
      return true;
    }
    return false;
  }

  static handle cast(const Rat& src, return_value_policy, handle) {
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(rat_to_string(src)).release();
  }
};

}  // namespace pybind11::detail

namespace {

ConePoint<Rat> point_from_rats(const Rat& x1, const Rat& x2, const Rat& t) {
  return ConePoint<Rat>{x1, x2, t};
}

py::tuple point_to_tuple(const ConePoint<Rat>& p) {
  return py::make_tuple(p.x1, p.x2, p.t);
}

SupportPattern pattern_from_cells_py(int n, const std::vector<std::tuple<int, int, int>>& cells) {
  SupportPattern p(n);
  for (auto [i, j, c] : cells) {
    if (i > j) std::swap(i, j);
    p.set(pair_index(n, i - 1, j - 1), c - 1, true);
  }
  return p;
}

std::vector<std::tuple<int, int, int>> pattern_cells_py(const SupportPattern& p) {
  std::vector<std::tuple<int, int, int>> out;
  for (const Cell& c : p.cells()) {
    const auto [i, j] = pair_at(p.n(), c.row);
    out.emplace_back(i + 1, j + 1, c.col + 1);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact cone-pairing supports, cover-number brackets, and slice lifts";

  // --- cone primitives ------------------------------------------------
  m.def(
      "classify",
      [](const Rat& x1, const Rat& x2, const Rat& t) {
        return std::string(to_string(classify(point_from_rats(x1, x2, t))));
      },
      py::arg("x1"), py::arg("x2"), py::arg("t"),
      "Exact membership of (x1,x2,t): 'interior', 'boundary' or 'outside'.");
  m.def(
      "classify_float",
      [](double x1, double x2, double t, double eps) {
        return std::string(to_string(classify(ConePoint<double>{x1, x2, t}, eps)));
      },
      py::arg("x1"), py::arg("x2"), py::arg("t"), py::arg("eps") = kDefaultEps);
  m.def(
      "inner",
      [](std::tuple<Rat, Rat, Rat> p, std::tuple<Rat, Rat, Rat> q) {
        return inner(point_from_rats(std::get<0>(p), std::get<1>(p), std::get<2>(p)),
                     point_from_rats(std::get<0>(q), std::get<1>(q), std::get<2>(q)));
      },
      py::arg("p"), py::arg("q"));
  m.def(
      "orthogonal_ray",
      [](std::tuple<Rat, Rat, Rat> a) {
        return point_to_tuple(orthogonal_ray(
            point_from_rats(std::get<0>(a), std::get<1>(a), std::get<2>(a))));
      },
      py::arg("a"), "Primitive generator of the ray orthogonal to a boundary point.");
  m.def(
      "collinear",
      [](std::tuple<Rat, Rat, Rat> p, std::tuple<Rat, Rat, Rat> q) {
        return collinear(point_from_rats(std::get<0>(p), std::get<1>(p), std::get<2>(p)),
                         point_from_rats(std::get<0>(q), std::get<1>(q), std::get<2>(q)));
      },
      py::arg("p"), py::arg("q"));
  m.def(
      "to_psd2",
      [](std::tuple<Rat, Rat, Rat> p) {
        const Sym2<Rat> s =
            to_psd2(point_from_rats(std::get<0>(p), std::get<1>(p), std::get<2>(p)));
        return py::make_tuple(s.m11, s.m12, s.m22);
      },
      py::arg("p"), "(m11, m12, m22) of the 2x2 psd image.");
  m.def(
      "psd2_check",
      [](const Rat& m11, const Rat& m12, const Rat& m22) {
        return is_psd(Sym2<Rat>{m11, m12, m22});
      },
      py::arg("m11"), py::arg("m12"), py::arg("m22"));

  // --- curves and matrices ---------------------------------------------
  m.def(
      "moment_vector",
      [](long long i) {
        const Vec3<Rat> v = moment_vector(i);
        return py::make_tuple(v.x, v.y, v.z);
      },
      py::arg("i"));
  m.def(
      "trig_vector",
      [](double theta) {
        const Vec3<double> v = trig_vector(theta);
        return py::make_tuple(v.x, v.y, v.z);
      },
      py::arg("theta"));

  py::class_<MatrixDocument>(m, "Matrix")
      .def_property_readonly("n", &MatrixDocument::n)
      .def_property_readonly("exact", &MatrixDocument::exact)
      .def(
          "entry",
          [](const MatrixDocument& doc, int i, int j, int col) -> py::object {
            if (i > j) std::swap(i, j);
            const int r = pair_index(doc.n(), i - 1, j - 1);
            if (doc.exact())
              return py::cast(std::get<LabeledMatrix<Rat>>(doc.matrix).at(r, col - 1));
            return py::cast(std::get<LabeledMatrix<double>>(doc.matrix).at(r, col - 1));
          },
          py::arg("i"), py::arg("j"), py::arg("col"),
          "Entry at row {i,j} and column col (1-based labels).")
      .def(
          "support",
          [](const MatrixDocument& doc, double eps) {
            return doc.exact()
                       ? extract_support(std::get<LabeledMatrix<Rat>>(doc.matrix))
                       : extract_support(std::get<LabeledMatrix<double>>(doc.matrix), eps);
          },
          py::arg("eps") = kDefaultEps)
      .def("to_json", [](const MatrixDocument& doc) { return dump_document(matrix_to_json(doc)); })
      .def("to_csv", [](const MatrixDocument& doc) { return matrix_to_csv(doc); })
      .def_static("from_json", [](const std::string& text) {
        return matrix_from_json(Json::parse(text));
      });

  m.def(
      "build_an_moment",
      [](int n, std::optional<std::vector<long long>> indices) {
        MatrixDocument doc;
        MomentCurve c = indices ? MomentCurve{*indices} : MomentCurve::basic(n);
        doc.curve = c;
        doc.matrix = build_an(c);
        return doc;
      },
      py::arg("n"), py::arg("indices") = std::nullopt);
  m.def(
      "build_an_trig",
      [](const std::vector<double>& thetas, double margin) {
        MatrixDocument doc;
        TrigCurve c{thetas};
        doc.curve = c;
        doc.matrix = build_an(c, margin);
        return doc;
      },
      py::arg("thetas"), py::arg("margin") = kDefaultMargin);
  m.def(
      "generalized_slack_entry_trig",
      [](int i1, int i2, int j, const std::vector<double>& thetas) {
        return generalized_slack_entry(i1 - 1, i2 - 1, j - 1, TrigCurve{thetas});
      },
      py::arg("i1"), py::arg("i2"), py::arg("j"), py::arg("thetas"));

  // --- supports and zero structures ------------------------------------
  py::class_<SupportPattern>(m, "SupportPattern")
      .def(py::init<int>(), py::arg("n"))
      .def_static("an_support", &SupportPattern::full, py::arg("n"),
                  "The pairing-family support: true at (e, j) iff j is not in e.")
      .def_static("from_cells", &pattern_from_cells_py, py::arg("n"), py::arg("cells"))
      .def_property_readonly("n", &SupportPattern::n)
      .def("count", &SupportPattern::count)
      .def(
          "test",
          [](const SupportPattern& p, int i, int j, int col) {
            if (i > j) std::swap(i, j);
            return p.test(pair_index(p.n(), i - 1, j - 1), col - 1);
          },
          py::arg("i"), py::arg("j"), py::arg("col"))
      .def("cells", &pattern_cells_py)
      .def("restrict_to",
           [](const SupportPattern& p, std::vector<int> cols) {
             for (int& c : cols) --c;
             return p.restrict_to(cols);
           })
      .def("digest", [](const SupportPattern& p) { return pattern_digest(p); })
      .def("__eq__", [](const SupportPattern& a, const SupportPattern& b) { return a == b; });

  py::class_<ColumnGraph>(m, "ColumnGraph")
      .def_property_readonly("n", [](const ColumnGraph& g) { return g.n; })
      .def("components",
           [](const ColumnGraph& g) {
             std::vector<std::vector<int>> out;
             for (const auto& comp : g.components) {
               std::vector<int> c;
               for (int v : comp) c.push_back(v + 1);
               out.push_back(std::move(c));
             }
             return out;
           })
      .def("zero_cols", [](const ColumnGraph& g) {
        std::vector<int> out;
        for (int c : g.zero_cols()) out.push_back(c + 1);
        return out;
      });

  m.def(
      "column_graph",
      [](int n, std::vector<int> zero_cols, std::vector<std::pair<int, int>> zero_rows) {
        for (int& c : zero_cols) --c;
        for (auto& [i, j] : zero_rows) {
          --i;
          --j;
        }
        return build_column_graph(n, zero_cols, zero_rows);
      },
      py::arg("n"), py::arg("zero_cols"), py::arg("zero_rows"));
  m.def(
      "forced_zero_closure",
      [](const SupportPattern& p, const ColumnGraph& g) -> py::tuple {
        const auto res = forced_zero_closure(p, g);
        if (res.ok()) return py::make_tuple(true, py::none());
        const auto [i, j] = pair_at(p.n(), res.violation->cell.row);
        std::ostringstream os;
        os << res.violation->rule << " at ({" << i + 1 << "," << j + 1 << "},"
           << res.violation->cell.col + 1 << ")";
        return py::make_tuple(false, py::cast(os.str()));
      },
      py::arg("pattern"), py::arg("graph"));
  m.def(
      "find_zero_block",
      [](const ColumnGraph& g, int n0) {
        const ZeroBlockWitness w = find_zero_block(g, n0);
        std::vector<int> cols;
        for (int c : w.cols) cols.push_back(c + 1);
        return py::make_tuple(cols, std::string(to_string(w.reason)));
      },
      py::arg("graph"), py::arg("n0"));
  m.def(
      "find_clique",
      [](int n, std::vector<std::pair<int, int>> edges, int k) -> py::object {
        for (auto& [i, j] : edges) {
          --i;
          --j;
        }
        const auto res = find_clique(n, edges, k);
        if (!res) return py::none();
        std::vector<int> out;
        for (int v : *res) out.push_back(v + 1);
        return py::cast(out);
      },
      py::arg("n"), py::arg("edges"), py::arg("k"));
  m.def("turan_threshold", &turan_threshold, py::arg("n"), py::arg("k"));

  // --- covering ---------------------------------------------------------
  py::class_<CoverCertificate>(m, "CoverCertificate")
      .def_property_readonly("kind",
                             [](const CoverCertificate& c) { return std::string(to_string(c.kind)); })
      .def_property_readonly("value", [](const CoverCertificate& c) { return c.value; })
      .def_property_readonly("part_count",
                             [](const CoverCertificate& c) { return c.parts.size(); })
      .def("to_json", [](const CoverCertificate& c) { return dump_document(certificate_to_json(c)); })
      .def_static("from_json",
                  [](const std::string& text) { return certificate_from_json(Json::parse(text)); });

  m.def(
      "cover_number_exact",
      [](const SupportPattern& target, const std::string& mode, int limit) {
        const Realizability r = mode == "constructive" ? Realizability::Constructive
                                                       : Realizability::NecessaryOnly;
        const auto res = cover_number_exact(target, r, limit);
        return py::make_tuple(res.value, res.cert);
      },
      py::arg("target"), py::arg("mode") = "necessary-only",
      py::arg("limit") = kDefaultCoverLimit);
  m.def(
      "cover_number_upper",
      [](const SupportPattern& target) {
        const auto res = cover_number_upper(target);
        return py::make_tuple(res.value, res.cert);
      },
      py::arg("target"));
  m.def("lower_bound_chain", &lower_bound_chain, py::arg("base_n0"), py::arg("steps"),
        py::arg("limit") = kDefaultCoverLimit);
  m.def(
      "verify_cover",
      [](const CoverCertificate& cert, int limit) {
        const VerifyReport rep = verify_cover(cert, limit);
        return py::make_tuple(rep.ok, rep.first_violation);
      },
      py::arg("certificate"), py::arg("limit") = kDefaultCoverLimit);

  // --- slice lift --------------------------------------------------------
  m.def(
      "psd3_check",
      [](const Rat& t, const Rat& a, const Rat& b, const Rat& c, const Rat& s) {
        return is_psd(Sym3<Rat>::slice(t, a, b, c, s));
      },
      py::arg("t"), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("s"),
      "Exact psd test of [[t,a,b],[a,t,c],[b,c,s]].");
  m.def(
      "slice_decompose",
      [](const Rat& t, const Rat& a, const Rat& b, const Rat& c, const Rat& s) -> py::object {
        const auto w = slice_decompose(t, a, b, c, s);
        if (!w) return py::none();
        return py::make_tuple(w->u, w->v);
      },
      py::arg("t"), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("s"));
  m.def(
      "slice_decompose_float",
      [](double t, double a, double b, double c, double s, double eps) -> py::object {
        const auto w = slice_decompose(t, a, b, c, s, eps);
        if (!w) return py::none();
        return py::make_tuple(w->u, w->v);
      },
      py::arg("t"), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("s"),
      py::arg("eps") = kDefaultEps);

  py::class_<SocLiftDescription>(m, "SocLift")
      .def_property_readonly("k", [](const SocLiftDescription& l) { return l.k; })
      .def("to_json", [](const SocLiftDescription& l) { return dump_document(lift_to_json(l)); })
      .def_static("from_json",
                  [](const std::string& text) { return lift_from_json(Json::parse(text)); });

  m.def("build_slice_lift", &build_slice_lift);
  m.def(
      "lift_feasible",
      [](const SocLiftDescription& lift, const std::vector<Rat>& ambient) {
        return lift_feasible_point(lift, ambient).has_value();
      },
      py::arg("lift"), py::arg("ambient"));
  m.def(
      "sample_verify_lift",
      [](const SocLiftDescription& lift, long long trials, std::uint64_t seed, double eps) {
        const LiftSampleReport rep = sample_verify_lift(lift, trials, seed, eps);
        py::dict d;
        d["trials"] = rep.trials;
        d["psd_accepted"] = rep.psd_accepted;
        d["both_rejected"] = rep.both_rejected;
        d["disagreements"] = rep.disagreements;
        d["first_disagreement"] = rep.first_disagreement;
        return d;
      },
      py::arg("lift"), py::arg("trials") = 1000, py::arg("seed") = 1,
      py::arg("eps") = kDefaultEps);

#ifdef SOCCOVER_VERSION
  m.attr("__version__") = SOCCOVER_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
