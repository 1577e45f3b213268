// Python bindings. Structured reports cross the boundary as JSON strings and
// are decoded on the Python side.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tiltz/center.hpp"
#include "tiltz/variants.hpp"

namespace py = pybind11;
using namespace tiltz;

namespace {

std::vector<std::pair<int, int>> pairs(const std::vector<Stretch>& ss) {
  std::vector<std::pair<int, int>> out;
  for (const auto& s : ss) out.emplace_back(s.lo, s.hi);
  return out;
}

Morphism normalize_sum(std::string_view text, Prime p, bool weights) {
  Engine e(p);
  std::optional<Morphism> total;
  for (const auto& w : parse_word_sum(text, weights)) {
    Morphism m = e.normalize(w);
    if (!total) total = m;
    else if (total->source() != m.source() || total->target() != m.target())
      throw std::invalid_argument("terms of the sum have different endpoints");
    else *total += m;
  }
  if (!total) throw std::invalid_argument("empty word sum");
  return *total;
}

VariantSpec variant_spec(const std::string& kind, std::int64_t base, bool literal) {
  if (kind == "quantum") return VariantSpec::quantum(base);
  if (kind == "g1t") return VariantSpec::g1t(base);
  if (kind == "g2t") return VariantSpec::g2t(base, !literal);
  throw std::invalid_argument("unknown variant '" + kind + "'");
}

std::string center_json(std::int64_t p0, Vertex eve, Vertex bound, Vertex margin, bool solver) {
  Prime p(p0);
  CenterRun run = run_center(p, eve, bound, margin, solver);
  return center_report_json(p, eve, bound, margin, run.candidates, run.solver ? &*run.solver : nullptr,
                            run.products_zero);
}

}  // namespace

PYBIND11_MODULE(_tiltz, m) {
  m.doc() = "SL2 tilting quiver algebra engine";

  m.def("expand", [](Vertex v, std::int64_t p) { return expand(v, Prime(p)).big_endian(); },
        py::arg("v"), py::arg("p"), "Big-endian base-p digits of v.");
  m.def("value",
        [](const std::vector<std::int64_t>& d, std::int64_t p) {
          return PadicDigits::from_big_endian(d, Prime(p)).value();
        },
        py::arg("digits"), py::arg("p"), "Value of a big-endian digit list; negative digits allowed.");
  m.def("generation", [](Vertex v, std::int64_t p) { return generation(v, Prime(p)); });
  m.def("is_eve", [](Vertex v, std::int64_t p) { return is_eve(v, Prime(p)); });
  m.def("digit_set", [](Vertex v, std::int64_t p) { return digit_set(v, Prime(p)); });

  m.def("minimal_down_stretches",
        [](Vertex v, std::int64_t p) { return pairs(minimal_down_stretches(v, Prime(p))); });
  m.def("minimal_up_stretches",
        [](Vertex v, std::int64_t p) { return pairs(minimal_up_stretches(v, Prime(p))); });
  m.def("is_down_admissible", [](const std::string& s, Vertex v, std::int64_t p) {
    return is_down_admissible(AdmissibleSet::parse(s), v, Prime(p));
  });
  m.def("is_up_admissible", [](const std::string& s, Vertex v, std::int64_t p) {
    return is_up_admissible(AdmissibleSet::parse(s), v, Prime(p));
  });
  m.def("reflect_down", [](Vertex v, const std::string& s, std::int64_t p) {
    return reflect_down(v, AdmissibleSet::parse(s), Prime(p));
  });
  m.def("reflect_up", [](Vertex v, const std::string& s, std::int64_t p) {
    return reflect_up(v, AdmissibleSet::parse(s), Prime(p));
  });
  m.def("down_hull", [](const std::string& s, Vertex v, std::int64_t p) -> std::optional<std::string> {
    auto h = down_hull(AdmissibleSet::parse(s), v, Prime(p));
    if (!h) return std::nullopt;
    return h->to_string();
  });

  m.def("block", [](Vertex e, std::int64_t p, Vertex n) { return block(e, Prime(p), n).members; },
        py::arg("eve"), py::arg("p"), py::arg("bound"));
  m.def("equiv_class",
        [](Vertex v, std::int64_t p, Vertex n) { return equiv_class(v, digit_set(v, Prime(p)), Prime(p), n); },
        py::arg("v"), py::arg("p"), py::arg("bound"), "The class C_v cut at the bound.");
  m.def("_quiver",
        [](std::int64_t p, Vertex e, Vertex n, const std::string& fmt) {
          if (fmt != "dot" && fmt != "json") throw std::invalid_argument("format must be dot or json");
          return export_quiver(block(e, Prime(p), n), Prime(p), fmt == "dot" ? Format::Dot : Format::Json);
        },
        py::arg("p"), py::arg("eve"), py::arg("bound"), py::arg("format"));

  m.def("hom_dim", [](Vertex v, Vertex w, std::int64_t p) { return hom_dim(v, w, Prime(p)); });
  m.def("hom_basis", [](Vertex v, Vertex w, std::int64_t p, bool weights) {
    std::vector<std::string> out;
    for (const auto& b : hom_basis(v, w, Prime(p))) out.push_back(b.to_string(weights));
    return out;
  }, py::arg("v"), py::arg("w"), py::arg("p"), py::arg("weights") = false);
  m.def("normalize",
        [](const std::string& word, std::int64_t p, bool weights) {
          return normalize_sum(word, Prime(p), weights).to_string(weights);
        },
        py::arg("word"), py::arg("p"), py::arg("weights") = false, "Normal form of a word expression.");
  m.def("_normalize_json",
        [](const std::string& word, std::int64_t p, bool weights) {
          return normalize_sum(word, Prime(p), weights).to_json();
        },
        py::arg("word"), py::arg("p"), py::arg("weights") = false);

  m.def("_center", &center_json, py::arg("p"), py::arg("eve"), py::arg("bound"), py::arg("margin"),
        py::arg("solver") = false);
  m.def("casimir_scalar", [](Vertex e, std::int64_t p) { return casimir_scalar(e, Prime(p)).value(); });

  m.def("variant_value", [](const std::string& kind, std::int64_t base, std::int64_t i) {
    return variant_value(variant_spec(kind, base, false), i);
  });
  m.def("variant_compose",
        [](const std::string& kind, std::int64_t base, const std::string& word, std::int64_t n) {
          auto spec = variant_spec(kind, base, false);
          auto a = variant_window(spec, n ? n : (kind == "quantum" ? 12 : kind == "g1t" ? 8 : 2));
          return a.to_string(variant_compose(a, word));
        },
        py::arg("kind"), py::arg("base"), py::arg("word"), py::arg("n") = 0);
  m.def("_variant_center",
        [](const std::string& kind, std::int64_t base, std::int64_t n, std::int64_t margin, bool literal) {
          return variant_center_json(variant_center(variant_window(variant_spec(kind, base, literal), n), margin));
        },
        py::arg("kind"), py::arg("base"), py::arg("n"), py::arg("margin"), py::arg("literal") = false);
  m.def("_donkin", [](Vertex v, std::int64_t p) { return donkin_json(v, Prime(p)); });
}
