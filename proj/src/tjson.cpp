#include "pauli_tomograph/tjson.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pauli_tomograph/errors.hpp"

namespace pt {
namespace {

using nlohmann::json;

json axis_json(const Axis& a) { return json{{"min", a.min}, {"max", a.max}, {"count", a.count}}; }

json grid_json(const std::vector<Axis>& axes) {
  json arr = json::array();
  for (const auto& a : axes) arr.push_back(axis_json(a));
  return json{{"axes", arr}};
}

[[noreturn]] void malformed(const std::string& what) { fail(ErrorKind::Io, "malformed TJSON: " + what); }

Axis read_axis(const json& j) {
  if (!j.is_object() || !j.contains("min") || !j.contains("max") || !j.contains("count")) malformed("axis needs min, max, count");
  Axis a{j["min"].get<double>(), j["max"].get<double>(), j["count"].get<std::size_t>()};
  if (!(a.max > a.min) || a.count == 0) malformed("empty axis");
  return a;
}

std::vector<Axis> read_axes(const json& doc) {
  if (!doc.contains("grid") || !doc["grid"].contains("axes") || !doc["grid"]["axes"].is_array())
    malformed("missing grid.axes");
  std::vector<Axis> axes;
  for (const auto& a : doc["grid"]["axes"]) axes.push_back(read_axis(a));
  if (axes.empty()) malformed("grid has no axes");
  return axes;
}

void put_real4(json& data, const std::array<std::vector<double>, 4>& comp) {
  for (const auto& c : comp)
    for (double v : c) data.push_back(v);
}

std::array<std::vector<double>, 4> get_real4(const json& data, std::size_t per_component) {
  if (!data.is_array() || data.size() != 4 * per_component) malformed("real4 data has the wrong length");
  std::array<std::vector<double>, 4> comp;
  for (std::size_t j = 0; j < 4; ++j) {
    comp[j].resize(per_component);
    for (std::size_t i = 0; i < per_component; ++i) comp[j][i] = data[j * per_component + i].get<double>();
  }
  return comp;
}

json encode(const SpinDensity& s) {
  s.validate();
  json data = json::array();
  for (const auto& m : s.members)
    for (const ComplexField* f : {&m.up, &m.down})
      for (const cplx& v : f->values) data.push_back(json::array({v.real(), v.imag()}));
  return json{{"grid", grid_json(s.grid().axes)},
              {"kind", "complex"},
              {"data", std::move(data)},
              {"meta", {{"representation", "state"}, {"weights", s.weights}}}};
}

json encode(const TomogramField4& w) {
  json data = json::array();
  put_real4(data, w.comp);
  return json{{"grid", grid_json(w.x.axes)},
              {"kind", "real4"},
              {"data", std::move(data)},
              {"meta", {{"representation", "optical"}, {"angles", w.angles}}}};
}

json encode(const PhaseField4& w) {
  json data = json::array();
  put_real4(data, w.comp);
  return json{{"grid", grid_json({w.q, w.p})},
              {"kind", "real4"},
              {"data", std::move(data)},
              {"meta", {{"representation", w.kind == PhaseKind::Wigner ? "wigner" : "husimi"}}}};
}

json encode(const SymplecticField4& w) {
  json data = json::array();
  put_real4(data, w.comp);
  json params = json::array();
  for (const auto& p : w.params) params.push_back(json::array({p[0], p[1]}));
  return json{{"grid", grid_json({w.x})},
              {"kind", "real4"},
              {"data", std::move(data)},
              {"meta", {{"representation", "symplectic"}, {"parameters", params}}}};
}

Document decode(const json& doc) {
  if (!doc.is_object()) malformed("top level must be an object");
  for (const char* key : {"grid", "kind", "data", "meta"})
    if (!doc.contains(key)) malformed(std::string("missing '") + key + "'");
  const auto axes = read_axes(doc);
  const std::string kind = doc["kind"].get<std::string>();
  const json& meta = doc["meta"];
  const json& data = doc["data"];
  const std::string rep = meta.value("representation", kind == "complex" ? "state" : "");
  Grid g(axes);
  const std::size_t n = g.size();

  if (kind == "complex") {
    if (rep != "state") malformed("complex data must hold a state");
    std::vector<double> weights = meta.contains("weights") ? meta["weights"].get<std::vector<double>>()
                                                           : std::vector<double>{1.0};
    if (!data.is_array() || data.size() != weights.size() * 2 * n) malformed("state data has the wrong length");
    SpinDensity s;
    s.weights = weights;
    std::size_t at = 0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      SpinorField m{ComplexField(g), ComplexField(g)};
      for (ComplexField* f : {&m.up, &m.down})
        for (auto& v : f->values) {
          const json& e = data[at++];
          if (!e.is_array() || e.size() != 2) malformed("complex entries are [re, im]");
          v = cplx(e[0].get<double>(), e[1].get<double>());
        }
      s.members.push_back(std::move(m));
    }
    s.validate();
    return s;
  }
  if (kind != "real4") malformed("unknown kind '" + kind + "'");

  if (rep == "optical") {
    if (!meta.contains("angles")) malformed("optical tomogram needs meta.angles");
    auto angles = meta["angles"].get<std::vector<std::vector<double>>>();
    for (const auto& a : angles)
      if (a.size() != axes.size()) malformed("one angle per X axis expected");
    TomogramField4 w = zero_tomogram(g, angles);
    w.comp = get_real4(data, angles.size() * n);
    return w;
  }
  if (rep == "wigner" || rep == "husimi") {
    if (axes.size() != 2) malformed("phase-space fields need (q, p) axes");
    PhaseField4 w = zero_phase_field(axes[0], axes[1], rep == "wigner" ? PhaseKind::Wigner : PhaseKind::Husimi);
    w.comp = get_real4(data, n);
    return w;
  }
  if (rep == "symplectic") {
    if (axes.size() != 1 || !meta.contains("parameters")) malformed("symplectic tomogram needs one X axis and meta.parameters");
    SymplecticField4 w;
    w.x = axes[0];
    for (const auto& p : meta["parameters"]) w.params.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    w.comp = get_real4(data, w.params.size() * n);
    return w;
  }
  malformed("unknown representation '" + rep + "'");
}

void put(std::string& out, double v) {
  char buf[40];
  auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  out.append(buf, r.ptr);
}

void row(std::string& out, std::initializer_list<double> vals) {
  bool first = true;
  for (double v : vals) {
    if (!first) out.push_back(',');
    put(out, v);
    first = false;
  }
  out.push_back('\n');
}

}  // namespace

const char* representation_name(const Document& doc) {
  switch (doc.index()) {
    case 0: return "state";
    case 1: return "optical";
    case 2: return std::get<PhaseField4>(doc).kind == PhaseKind::Wigner ? "wigner" : "husimi";
    default: return "symplectic";
  }
}

std::string to_tjson(const Document& doc, const std::string& meta_json) {
  json j = std::visit([](const auto& d) { return encode(d); }, doc);
  if (!meta_json.empty()) {
    json extra = json::parse(meta_json, nullptr, false);
    require(extra.is_object(), ErrorKind::Contract, "extra meta must be a JSON object");
    for (auto it = extra.begin(); it != extra.end(); ++it)
      if (it.key() != "representation") j["meta"][it.key()] = it.value();
  }
  return j.dump();
}

Document from_tjson(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) malformed("not valid JSON");
  try {
    return decode(j);
  } catch (const json::exception& e) {
    malformed(e.what());
  }
}

void save_tjson(const std::string& path, const Document& doc, const std::string& meta_json) {
  std::ofstream f(path, std::ios::binary);
  require(static_cast<bool>(f), ErrorKind::Io, "cannot open '" + path + "' for writing");
  f << to_tjson(doc, meta_json) << '\n';
  require(static_cast<bool>(f), ErrorKind::Io, "write to '" + path + "' failed");
}

Document load_tjson(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  require(static_cast<bool>(f), ErrorKind::Io, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return from_tjson(ss.str());
}

std::string to_csv(const Document& doc) {
  std::string out;
  if (const auto* w = std::get_if<TomogramField4>(&doc)) {
    const std::size_t n = w->slice_size();
    if (w->x.dims() == 1) {
      out = "X,theta,w1,w2,w3,w4\n";
      for (std::size_t s = 0; s < w->samples(); ++s)
        for (std::size_t i = 0; i < n; ++i)
          row(out, {w->x.axes[0].at(i), w->angles[s][0], w->at(0, s, i), w->at(1, s, i), w->at(2, s, i), w->at(3, s, i)});
    } else {
      require(w->x.dims() == 2, ErrorKind::Capability, "CSV export supports 1D and 2D tomograms");
      out = "X1,X2,theta1,theta2,w1,w2,w3,w4\n";
      const Axis& a = w->x.axes[0];
      const Axis& b = w->x.axes[1];
      for (std::size_t s = 0; s < w->samples(); ++s)
        for (std::size_t i = 0; i < n; ++i)
          row(out, {a.at(i / b.count), b.at(i % b.count), w->angles[s][0], w->angles[s][1], w->at(0, s, i),
                    w->at(1, s, i), w->at(2, s, i), w->at(3, s, i)});
    }
  } else if (const auto* p = std::get_if<PhaseField4>(&doc)) {
    out = p->kind == PhaseKind::Wigner ? "q,p,W1,W2,W3,W4\n" : "q,p,Q1,Q2,Q3,Q4\n";
    for (std::size_t i = 0; i < p->q.count; ++i)
      for (std::size_t m = 0; m < p->p.count; ++m)
        row(out, {p->q.at(i), p->p.at(m), p->at(0, i, m), p->at(1, i, m), p->at(2, i, m), p->at(3, i, m)});
  } else if (const auto* y = std::get_if<SymplecticField4>(&doc)) {
    out = "X,mu,nu,M1,M2,M3,M4\n";
    const std::size_t n = y->x.count;
    for (std::size_t s = 0; s < y->params.size(); ++s)
      for (std::size_t i = 0; i < n; ++i)
        row(out, {y->x.at(i), y->params[s][0], y->params[s][1], y->comp[0][s * n + i], y->comp[1][s * n + i],
                  y->comp[2][s * n + i], y->comp[3][s * n + i]});
  } else {
    const auto& s = std::get<SpinDensity>(doc);
    require(s.grid().dims() == 1, ErrorKind::Capability, "CSV export of states supports 1D grids");
    out = "member,weight,x,re_up,im_up,re_down,im_down\n";
    const Axis& a = s.grid().axes[0];
    for (std::size_t k = 0; k < s.members.size(); ++k)
      for (std::size_t i = 0; i < a.count; ++i) {
        const cplx u = s.members[k].up.values[i], d = s.members[k].down.values[i];
        row(out, {static_cast<double>(k), s.weights[k], a.at(i), u.real(), u.imag(), d.real(), d.imag()});
      }
  }
  return out;
}

}  // namespace pt
