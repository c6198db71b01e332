#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>

#include "kolab/bits.hpp"
#include "kolab/complexity.hpp"
#include "kolab/config.hpp"
#include "kolab/decompressor.hpp"
#include "kolab/error.hpp"
#include "kolab/gf2.hpp"
#include "kolab/machine.hpp"
#include "kolab/oracle.hpp"
#include "kolab/primes.hpp"
#include "kolab/reduction.hpp"
#include "kolab/report.hpp"

namespace py = pybind11;
using namespace kolab;

namespace {

using Overrides = std::map<std::string, std::string>;

RunConfig make_config(const Overrides& overrides) {
  RunConfig cfg;
  for (const auto& [k, v] : overrides) cfg.set(k, v);
  cfg.validate();
  return cfg;
}

// Reports cross the boundary as JSON text; the Python side decodes them.
std::string dump(const Json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_kolab, m) {
  m.doc() = "Bindings for the kolab core library. Bit strings are str over '0'/'1' or 'HEX:LEN'.";

  static py::exception<Error> error(m, "KolabError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      error(e.what());
    }
  });

  m.def("to_hex", [](const std::string& bits) { return to_hex(parse_bits_arg(bits)); });
  m.def("from_hex", [](const std::string& hex) { return parse_hex(hex).str(); });
  m.def("encode_nat", [](std::uint64_t v) { return encode_nat(v).str(); });
  m.def("decode_nat", [](const std::string& bits) { return decode_nat(parse_bits_arg(bits)); });

  m.def("nth_prime", &nth_prime, py::arg("index"));
  m.def("prime_index", &prime_index, py::arg("p"));
  m.def("parse_specific", [](std::uint64_t value) -> py::object {
    const auto s = parse_specific(value);
    if (!s) return py::none();
    py::dict d;
    d["m"] = s->m;
    d["p"] = s->p;
    d["k"] = s->k;
    d["l"] = s->l;
    d["n"] = s->n;
    return d;
  });

  m.def(
      "matvec",
      [](const std::string& a, std::size_t rows, std::size_t cols, const std::string& y) {
        return matvec(Gf2Matrix::deserialize(parse_bits_arg(a), rows, cols), parse_bits_arg(y)).str();
      },
      py::arg("a"), py::arg("rows"), py::arg("cols"), py::arg("y"));
  m.def(
      "collision_census",
      [](std::size_t n, std::size_t k, const std::string& b1, const std::string& b2) {
        const auto r = collision_census(n, k, parse_bits_arg(b1), parse_bits_arg(b2));
        return py::make_tuple(r.count, r.total);
      },
      py::arg("n"), py::arg("k"), py::arg("b1"), py::arg("b2"));

  m.def(
      "in_halting",
      [](const std::string& x, const Overrides& o) { return in_halting(parse_bits_arg(x), make_config(o).params.budgets); },
      py::arg("x"), py::arg("overrides") = Overrides{});
  m.def(
      "v_opt",
      [](const std::string& d, const std::string& cond, const Overrides& o) -> py::object {
        const auto out = v_opt(parse_bits_arg(d), parse_bits_arg(cond), make_config(o).params.budgets);
        if (!out.halted()) return py::none();
        return py::str(out.output.str());
      },
      py::arg("d"), py::arg("cond") = "", py::arg("overrides") = Overrides{});
  m.def(
      "decode",
      [](const std::string& machine, const std::string& d, const std::string& cond, const Overrides& o) -> py::object {
        const auto out = run_machine(parse_machine(machine), parse_bits_arg(d), parse_bits_arg(cond), make_config(o).params);
        if (!out.halted()) return py::none();
        return py::str(out.output.str());
      },
      py::arg("machine"), py::arg("d"), py::arg("cond") = "", py::arg("overrides") = Overrides{});
  m.def(
      "complexity",
      [](const std::string& machine, const std::string& x, const std::string& cond, unsigned bound,
         const Overrides& o) -> py::object {
        const auto cfg = make_config(o);
        py::gil_scoped_release release;
        const auto table = build_table(parse_machine(machine), parse_bits_arg(cond), bound, cfg.params, cfg.threads);
        const auto c = table.complexity_of(parse_bits_arg(x));
        py::gil_scoped_acquire acquire;
        if (!c) return py::none();
        return py::int_(*c);
      },
      py::arg("machine"), py::arg("x"), py::arg("cond") = "", py::arg("bound") = 12,
      py::arg("overrides") = Overrides{});

  m.def(
      "oracle_json",
      [](const std::string& q, const Overrides& o) {
        const auto cfg = make_config(o);
        RandomnessOracle oracle(cfg.params, cfg.threads);
        return dump(to_json(oracle.query(parse_bits_arg(q), cfg.mode)));
      },
      py::arg("q"), py::arg("overrides") = Overrides{});
  m.def(
      "reduce_json",
      [](const std::string& x, const Overrides& o) {
        const auto cfg = make_config(o);
        std::string out;
        {
          py::gil_scoped_release release;
          RandomnessOracle oracle(cfg.params, cfg.threads);
          out = dump(to_json(decide_halting(parse_bits_arg(x), cfg.reduction(), oracle)));
        }
        return out;
      },
      py::arg("x"), py::arg("overrides") = Overrides{});
  m.def(
      "calibrate_json",
      [](std::uint64_t max_len, const Overrides& o) { return dump(to_json(calibrate_g(make_config(o).params, max_len))); },
      py::arg("max_len"), py::arg("overrides") = Overrides{});
  m.def(
      "spurious_json",
      [](std::uint64_t l, std::uint64_t k, std::uint64_t trials, const Overrides& o) {
        const auto cfg = make_config(o);
        RandomnessOracle oracle(cfg.params, cfg.threads);
        return dump(to_json(spurious_rate_experiment(l, k, trials, cfg.seed, oracle, cfg.mode)));
      },
      py::arg("l"), py::arg("k"), py::arg("trials"), py::arg("overrides") = Overrides{});
  m.def("config_keys", &RunConfig::keys);
}
