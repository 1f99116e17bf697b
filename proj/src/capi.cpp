#include "pauli_tomograph/pauli_tomograph.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include <json.hpp>

#include "pauli_tomograph/dynamics.hpp"
#include "pauli_tomograph/errors.hpp"
#include "pauli_tomograph/numerics.hpp"
#include "pauli_tomograph/parallel.hpp"
#include "pauli_tomograph/quasidist.hpp"
#include "pauli_tomograph/scenarios.hpp"
#include "pauli_tomograph/tjson.hpp"
#include "pauli_tomograph/tomography.hpp"

struct pt_state {
  pt::SpinDensity s;
};

struct pt_dist {
  pt::Document d;
};

namespace {

using nlohmann::json;
using pt::ErrorKind;

thread_local std::string last_error;

pt_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::Contract: return PT_ERR_CONTRACT;
    case ErrorKind::Domain: return PT_ERR_DOMAIN;
    case ErrorKind::Capability: return PT_ERR_CAPABILITY;
    case ErrorKind::IllPosed: return PT_ERR_ILL_POSED;
    case ErrorKind::Reconstruction: return PT_ERR_RECONSTRUCTION;
    case ErrorKind::Config: return PT_ERR_CONFIG;
    case ErrorKind::Io: return PT_ERR_IO;
  }
  return PT_ERR_INTERNAL;
}

template <class F>
pt_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return PT_OK;
  } catch (const pt::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = std::string("internal error: ") + e.what();
  } catch (...) {
    last_error = "internal error";
  }
  return PT_ERR_INTERNAL;
}

void need(const void* p, const char* what) {
  pt::require(p != nullptr, ErrorKind::Contract, std::string(what) + " must not be null");
}

pt::Axis axis_of(const pt_axis& a) {
  pt::require(a.count > 0 && a.max > a.min, ErrorKind::Config, "invalid grid axis");
  return pt::Axis{a.min, a.max, a.count};
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

pt_state* wrap(pt::SpinDensity s) { return new pt_state{std::move(s)}; }
pt_dist* wrap(pt::Document d) { return new pt_dist{std::move(d)}; }

pt::SpinorField place(const pt::ComplexField& f, int spin_down) {
  return spin_down ? pt::spin_down(f) : pt::spin_up(f);
}

pt::FlowKind flow_kind(const char* name) {
  need(name, "flow");
  const std::string n(name);
  if (n != "free" && n != "oscillator" && n != "landau") pt::fail(ErrorKind::Config, "unknown flow '" + n + "'");
  return pt::parse_flow_kind(n);
}

pt::PropagatorBundle bundle_for(const pt_evolution& e, std::size_t dims) {
  pt::require(std::isfinite(e.t), ErrorKind::Config, "time must be finite");
  pt::PropagatorBundle b;
  b.flow = pt::classical_flow(pt::FlowSpec{flow_kind(e.flow), dims, e.omega}, e.t);
  b.spin = e.use_field ? pt::spin_propagator(pt::spin_generator_from_field({e.field[0], e.field[1], e.field[2]}, e.kappa), e.t)
                       : pt::spin_propagator(e.omega0, e.t);
  return b;
}

enum class Rep { Optical, Symplectic, Wigner, Husimi };

Rep rep_of(const char* name) {
  need(name, "representation");
  const std::string n(name);
  if (n == "optical") return Rep::Optical;
  if (n == "symplectic") return Rep::Symplectic;
  if (n == "wigner") return Rep::Wigner;
  if (n == "husimi") return Rep::Husimi;
  pt::fail(ErrorKind::Config, "unknown representation '" + n + "'");
}

std::vector<std::vector<double>> angle_tuples(const double* params, std::size_t n, std::size_t dims) {
  if (!params) {
    pt::require(dims == 1, ErrorKind::Config, "2D tomograms need explicit angle pairs");
    return pt::angle_list(pt::uniform_angles(64));
  }
  pt::require(n > 0, ErrorKind::Config, "empty angle list");
  std::vector<std::vector<double>> out(n, std::vector<double>(dims));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t d = 0; d < dims; ++d) out[s][d] = params[s * dims + d];
  return out;
}

std::vector<std::array<double, 2>> pairs_of(const double* params, std::size_t n) {
  pt::require(params != nullptr && n > 0, ErrorKind::Config, "symplectic representation needs (mu, nu) pairs");
  std::vector<std::array<double, 2>> out(n);
  for (std::size_t s = 0; s < n; ++s) out[s] = {params[2 * s], params[2 * s + 1]};
  return out;
}

pt::Document from_wigner(const pt::PhaseField4& w, Rep rep, const double* params, std::size_t n) {
  switch (rep) {
    case Rep::Wigner: return w;
    case Rep::Husimi: return pt::smooth_wigner_to_husimi(w);
    case Rep::Optical: {
      const auto a = angle_tuples(params, n, 1);
      std::vector<double> th;
      for (const auto& v : a) th.push_back(v[0]);
      return pt::tomogram_from_wigner(w, th);
    }
    case Rep::Symplectic: {
      const auto t = pt::tomogram_from_wigner(w, pt::uniform_angles(64));
      return pt::symplectic_field(t, pairs_of(params, n));
    }
  }
  pt::fail(ErrorKind::Contract, "unreachable representation");
}

json vec4_json(const pt::Vec4& v) { return json::array({v[0], v[1], v[2], v[3]}); }

json report_of(const pt::Document& doc) {
  json r;
  r["representation"] = pt::representation_name(doc);
  if (const auto* w = std::get_if<pt::TomogramField4>(&doc)) {
    const auto n = pt::normalization_check(*w);
    r["samples"] = w->samples();
    r["normalization_deviation"] = n.max_deviation;
    r["normalized"] = n.ok;
    r["min_value"] = w->min_value();
  } else if (const auto* p = std::get_if<pt::PhaseField4>(&doc)) {
    const pt::Vec4 ints{p->integral(0), p->integral(1), p->integral(2), p->integral(3)};
    r["integrals"] = vec4_json(ints);
    r["normalization_deviation"] = std::abs(ints[2] + ints[3] - 1.0);
    r["min_value"] = p->min_value();
  } else if (const auto* y = std::get_if<pt::SymplecticField4>(&doc)) {
    double worst = 0.0, mn = 0.0;
    const std::size_t n = y->x.count;
    for (std::size_t s = 0; s < y->params.size(); ++s) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += y->comp[2][s * n + i] + y->comp[3][s * n + i];
      worst = std::max(worst, std::abs(acc * y->x.spacing() - 1.0));
    }
    for (const auto& c : y->comp)
      for (double v : c) mn = std::min(mn, v);
    r["samples"] = y->params.size();
    r["normalization_deviation"] = worst;
    r["min_value"] = mn;
  }
  return r;
}

void write_text(const char* path, const std::string& text) {
  need(path, "path");
  std::ofstream f(path, std::ios::binary);
  pt::require(static_cast<bool>(f), ErrorKind::Io, std::string("cannot open '") + path + "' for writing");
  f << text;
  pt::require(static_cast<bool>(f), ErrorKind::Io, std::string("write to '") + path + "' failed");
}

}  // namespace

extern "C" {

const char* pt_version(void) { return "0.1.0"; }
const char* pt_last_error(void) { return last_error.c_str(); }
void pt_set_threads(int n) { pt::set_thread_count(n); }
void pt_string_free(char* s) { std::free(s); }

pt_status pt_state_fock(int n, pt_axis axis, int spin_down, pt_state** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(pt::SpinDensity::pure(place(pt::oscillator_eigenstate(n, pt::Grid::line(axis_of(axis))), spin_down)));
  });
}

pt_status pt_state_coherent(double re, double im, pt_axis axis, int spin_down, pt_state** out) {
  return guarded([&] {
    need(out, "out");
    *out = wrap(pt::SpinDensity::pure(place(pt::coherent_state({re, im}, pt::Grid::line(axis_of(axis))), spin_down)));
  });
}

pt_status pt_state_landau(int n, int m, pt_axis axis, int spin_down, pt_state** out) {
  return guarded([&] {
    need(out, "out");
    const pt::Axis a = axis_of(axis);
    *out = wrap(pt::SpinDensity::pure(place(pt::landau_state(n, m, pt::Grid::plane(a, a)), spin_down)));
  });
}

pt_status pt_state_scenario(const char* id, const pt_axis* axis, pt_state** out) {
  return guarded([&] {
    need(id, "scenario id");
    need(out, "out");
    const std::string s(id);
    if (s == "oscillator") {
      *out = wrap(pt::oscillator_entangled_initial(axis ? axis_of(*axis) : pt::default_axis_1d()));
    } else if (s == "landau") {
      const pt::Axis a = axis ? axis_of(*axis) : pt::default_axis_2d();
      *out = wrap(pt::landau_entangled_initial(pt::Grid::plane(a, a)));
    } else {
      pt::fail(ErrorKind::Config, "unknown scenario '" + s + "'");
    }
  });
}

pt_status pt_state_evolve(const pt_state* s, const pt_evolution* e, pt_state** out) {
  return guarded([&] {
    need(s, "state");
    need(e, "evolution");
    need(out, "out");
    const std::size_t dims = s->s.grid().dims();
    const pt::FlowSpec spec{flow_kind(e->flow), dims, e->omega};
    pt::require(std::isfinite(e->t), ErrorKind::Config, "time must be finite");
    pt::SpinDensity moved = pt::evolve_state(s->s, spec, e->t);
    const pt::Mat2 u = e->use_field ? pt::spin_unitary({e->field[0], e->field[1], e->field[2]}, e->kappa, e->t)
                                    : pt::spin_unitary(e->omega0, e->t);
    *out = wrap(e->t == 0.0 ? std::move(moved) : pt::rotate_spin(moved, u));
  });
}

pt_status pt_state_report(const pt_state* s, char** out) {
  return guarded([&] {
    need(s, "state");
    need(out, "out");
    // Spatially integrated spin density matrix, dequantized.
    std::complex<double> r11 = 0.0, r22 = 0.0, r12 = 0.0;
    for (std::size_t k = 0; k < s->s.members.size(); ++k) {
      const auto& m = s->s.members[k];
      const double w = s->s.weights[k];
      r11 += w * pt::inner(m.up, m.up);
      r22 += w * pt::inner(m.down, m.down);
      r12 += w * pt::inner(m.down, m.up);
    }
    json r;
    r["representation"] = "state";
    r["dims"] = s->s.grid().dims();
    r["members"] = s->s.members.size();
    r["trace"] = s->s.trace();
    r["spin_vector"] = vec4_json(pt::dequantize_entries(r11.real(), r22.real(), r12));
    r["boundary_density"] = pt::boundary_density(s->s);
    *out = dup(r.dump());
  });
}

pt_status pt_state_save(const pt_state* s, const char* path, const char* meta_json) {
  return guarded([&] {
    need(s, "state");
    need(path, "path");
    pt::save_tjson(path, s->s, meta_json ? meta_json : "");
  });
}

pt_status pt_state_export_csv(const pt_state* s, const char* path) {
  return guarded([&] {
    need(s, "state");
    write_text(path, pt::to_csv(s->s));
  });
}

void pt_state_free(pt_state* s) { delete s; }

pt_status pt_transform(const pt_state* s, const char* rep, const double* params, size_t n, pt_dist** out) {
  return guarded([&] {
    need(s, "state");
    need(out, "out");
    const Rep r = rep_of(rep);
    const std::size_t dims = s->s.grid().dims();
    if (r == Rep::Optical) {
      *out = wrap(pt::optical_tomogram_vector(s->s, angle_tuples(params, n, dims)));
      return;
    }
    pt::require(dims == 1, ErrorKind::Capability, "materialized phase-space and symplectic output is 1D");
    switch (r) {
      case Rep::Wigner: *out = wrap(pt::wigner_vector(s->s)); break;
      case Rep::Husimi: *out = wrap(pt::husimi_vector(s->s)); break;
      default: {
        const auto t = pt::optical_tomogram_vector(s->s, pt::uniform_angles(64));
        *out = wrap(pt::symplectic_field(t, pairs_of(params, n)));
      }
    }
  });
}

pt_status pt_dist_transform(const pt_dist* d, const char* rep, const double* params, size_t n, pt_dist** out) {
  return guarded([&] {
    need(d, "distribution");
    need(out, "out");
    const Rep r = rep_of(rep);
    if (const auto* w = std::get_if<pt::PhaseField4>(&d->d)) {
      const pt::PhaseField4 wig = w->kind == pt::PhaseKind::Wigner ? *w : pt::deconvolve_husimi_to_wigner(*w);
      *out = wrap(from_wigner(wig, r, params, n));
    } else if (const auto* t = std::get_if<pt::TomogramField4>(&d->d)) {
      if (r == Rep::Optical) {
        *out = wrap(pt::Document(*t));
      } else if (r == Rep::Symplectic) {
        *out = wrap(pt::symplectic_field(*t, pairs_of(params, n)));
      } else {
        *out = wrap(from_wigner(pt::wigner_from_optical_tomogram(*t), r, params, n));
      }
    } else {
      pt::fail(ErrorKind::Capability, "symplectic samples cannot be transformed further");
    }
  });
}

pt_status pt_dist_reconstruct(const pt_dist* d, pt_state** out) {
  return guarded([&] {
    need(d, "distribution");
    need(out, "out");
    if (const auto* w = std::get_if<pt::PhaseField4>(&d->d)) {
      const pt::PhaseField4 wig = w->kind == pt::PhaseKind::Wigner ? *w : pt::deconvolve_husimi_to_wigner(*w);
      *out = wrap(pt::density_from_kernel(pt::weyl_reconstruct(wig)));
    } else if (const auto* t = std::get_if<pt::TomogramField4>(&d->d)) {
      *out = wrap(pt::density_from_kernel(pt::rho_from_optical_tomogram(*t)));
    } else {
      pt::fail(ErrorKind::Capability, "reconstruction from symplectic samples is not supported");
    }
  });
}

pt_status pt_dist_evolve(const pt_dist* d, const pt_evolution* e, pt_dist** out) {
  return guarded([&] {
    need(d, "distribution");
    need(e, "evolution");
    need(out, "out");
    if (const auto* w = std::get_if<pt::PhaseField4>(&d->d)) {
      pt::require(w->kind == pt::PhaseKind::Wigner, ErrorKind::Capability,
                  "Husimi functions evolve through the Wigner representation; transform first");
      if (e->t == 0.0) {
        *out = wrap(pt::Document(*w));
        return;
      }
      *out = wrap(pt::evolve_wigner(*w, bundle_for(*e, 1)));
    } else if (const auto* t = std::get_if<pt::TomogramField4>(&d->d)) {
      if (e->t == 0.0) {
        *out = wrap(pt::Document(*t));
        return;
      }
      *out = wrap(pt::evolve_tomogram(*t, bundle_for(*e, t->x.dims())));
    } else {
      pt::fail(ErrorKind::Capability, "symplectic samples are evolved from an optical tomogram");
    }
  });
}

pt_status pt_dist_report(const pt_dist* d, char** out) {
  return guarded([&] {
    need(d, "distribution");
    need(out, "out");
    *out = dup(report_of(d->d).dump());
  });
}

const char* pt_dist_representation(const pt_dist* d) { return d ? pt::representation_name(d->d) : ""; }

pt_status pt_dist_save(const pt_dist* d, const char* path, const char* meta_json) {
  return guarded([&] {
    need(d, "distribution");
    need(path, "path");
    pt::save_tjson(path, d->d, meta_json ? meta_json : "");
  });
}

pt_status pt_dist_export_csv(const pt_dist* d, const char* path) {
  return guarded([&] {
    need(d, "distribution");
    write_text(path, pt::to_csv(d->d));
  });
}

void pt_dist_free(pt_dist* d) { delete d; }

pt_status pt_load(const char* path, pt_state** state, pt_dist** dist) {
  return guarded([&] {
    need(path, "path");
    need(state, "state");
    need(dist, "dist");
    *state = nullptr;
    *dist = nullptr;
    pt::Document doc = pt::load_tjson(path);
    if (auto* s = std::get_if<pt::SpinDensity>(&doc))
      *state = wrap(std::move(*s));
    else
      *dist = wrap(std::move(doc));
  });
}

pt_status pt_verify(const char* scenario, const double* times, size_t n_times, double tol, char** report,
                    int* passed) {
  return guarded([&] {
    need(scenario, "scenario");
    need(report, "report");
    need(passed, "passed");
    const std::string id(scenario);
    if (id != "oscillator" && id != "landau") pt::fail(ErrorKind::Config, "unknown scenario '" + id + "'");
    pt::ScenarioOptions opt;
    if (times && n_times > 0) opt.times.assign(times, times + n_times);
    pt::require(!opt.times.empty(), ErrorKind::Config, "verify needs at least one time");
    opt.tolerance = tol > 0.0 ? tol : 0.0;
    const pt::ScenarioReport r = pt::run_scenario(id, opt);
    *report = dup(r.to_json());
    *passed = r.pass ? 1 : 0;
  });
}

}  // extern "C"
