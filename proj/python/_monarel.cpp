#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "monarel/cli.hpp"
#include "monarel/error.hpp"
#include "monarel/io.hpp"

namespace py = pybind11;
using namespace monarel;
using io::Json;

namespace {

io::Node node(const Json& j, const char* what) { return io::Node{j, what, ""}; }

Json parse_arg(const std::string& text, const char* what) { return io::parse(text, what); }

std::tuple<int, std::string, std::string> run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string check_laws(const std::string& monad, const std::string& check, std::size_t max_size,
                       std::size_t samples, std::uint64_t seed) {
  MonadInstance t = monad == "upper" ? upper_monad() : monad_by_name(monad);
  LawConfig cfg;
  cfg.max_size = max_size;
  cfg.samples = samples;
  cfg.seed = seed;
  return io::to_json(run_check(check, t, cfg)).dump();
}

std::string member_dist(const std::string& s_json, const std::string& nu1_json,
                        const std::string& nu2_json) {
  Json sj = parse_arg(s_json, "S"), j1 = parse_arg(nu1_json, "nu1"), j2 = parse_arg(nu2_json, "nu2");
  Rel s = io::rel_from(node(sj, "S"));
  RatDist d1 = io::ratdist_from(node(j1, "nu1"), s.left());
  RatDist d2 = io::ratdist_from(node(j2, "nu2"), s.right());
  CouplingResult r = lift_member_dist(d1, d2, s);
  Json out{{"member", r.member}, {"witness", r.witness ? io::to_json(*r.witness) : Json(nullptr)},
           {"mass_mismatch", r.mass_mismatch}};
  if (r.violated_subset) {
    Json u = Json::array();
    for (const Atom& x : *r.violated_subset) u.push_back(x.str());
    out["violated_subset"] = u;
    out["nu1_U"] = format_rational(r.violated_lhs);
    out["nu2_SU"] = format_rational(r.violated_rhs);
  }
  return out.dump();
}

bool member_powerset(const std::string& s_json, const std::vector<std::string>& b1,
                     const std::vector<std::string>& b2) {
  Json sj = parse_arg(s_json, "S");
  Rel s = io::rel_from(node(sj, "S"));
  auto atoms = [](const std::vector<std::string>& xs) {
    std::vector<Atom> out;
    for (const auto& x : xs) out.push_back(Atom::parse(x));
    return FinSet(out);
  };
  return lift_member_powerset(atoms(b1), atoms(b2), s);
}

std::string lift(const std::string& monad, const std::string& s_json) {
  Json sj = parse_arg(s_json, "S");
  Rel s = io::rel_from(node(sj, "S"));
  MonadInstance t = monad == "upper" ? upper_monad() : monad_by_name(monad);
  if (!t.enumerable) throw Error(t.name + " is not enumerable");
  return io::to_json(lift_enumerate(t, s)).dump();
}

std::string typecheck(const std::string& judgment) {
  ml::Judgment j = ml::parse_judgment(judgment);
  return ml::show(ml::typecheck(j.context, j.term));
}

}  // namespace

PYBIND11_MODULE(_monarel, m) {
  m.doc() = "Monad liftings to relations over finite data";

  py::register_exception<Error>(m, "MonarelError", PyExc_ValueError);

  m.def("run_cli", &run_cli, py::arg("args"),
        "Run the command line in-process; returns (exit code, stdout, stderr).");
  m.def("check_laws", &check_laws, py::arg("monad"), py::arg("check") = "monad",
        py::arg("max_size") = 3, py::arg("samples") = 500, py::arg("seed") = 1,
        "Law report as a JSON string.");
  m.def("member_dist", &member_dist, py::arg("S"), py::arg("nu1"), py::arg("nu2"));
  m.def("member_powerset", &member_powerset, py::arg("S"), py::arg("B1"), py::arg("B2"));
  m.def("lift", &lift, py::arg("monad"), py::arg("S"));
  m.def("typecheck", &typecheck, py::arg("judgment"));
  m.def("help_text", &cli::help_text);
}
