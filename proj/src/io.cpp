#include "liestab/io.hpp"

#include "liestab/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace liestab {

namespace {

Json num(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? Json("nan") : Json(x > 0 ? "inf" : "-inf");
}

Json nums(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(num(x));
  return out;
}

Json vec(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(num(v(i)));
  return out;
}

Json mat(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(num(m(i, j)));
  return out;
}

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw InputError("scenario field '" + field + "': " + what);
}

const Json& need(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) fail(path + key, "missing");
  return j.at(key);
}

double get_number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int get_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

Vector get_vector(const Json& j, Eigen::Index size, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  if (size >= 0 && static_cast<Eigen::Index>(j.size()) != size)
    fail(path, "expected " + std::to_string(size) + " entries, got " + std::to_string(j.size()));
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = get_number(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

Matrix get_matrix(const Json& j, Eigen::Index rows, Eigen::Index cols, const std::string& path) {
  // Row-major flat array or array of rows.
  Matrix m(rows, cols);
  if (j.is_array() && !j.empty() && j[0].is_array()) {
    if (static_cast<Eigen::Index>(j.size()) != rows) fail(path, "expected " + std::to_string(rows) + " rows");
    for (Eigen::Index i = 0; i < rows; ++i)
      m.row(i) = get_vector(j[static_cast<std::size_t>(i)], cols, path + "[" + std::to_string(i) + "]").transpose();
    return m;
  }
  const Vector flat = get_vector(j, rows * cols, path);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = flat(i * cols + c);
  return m;
}

Element element_from_json(const Json& j, const LieAlgebra& a, const std::string& path) {
  if (j.is_array()) return get_vector(j, a.dim(), path);
  if (!j.is_object()) fail(path, "expected coordinates or a {label: value} object");
  Element x = Element::Zero(a.dim());
  for (const auto& [label, value] : j.items()) {
    const int idx = a.index_of(label);
    if (idx < 0) fail(path, "unknown basis label '" + label + "'");
    x(idx) += get_number(value, path + "." + label);
  }
  return x;
}

Letter letter_from_json(const Json& j, int d, const std::string& path) {
  try {
    if (j.is_string()) return Letter(parse_slot(j.get<std::string>()));
    if (!j.is_object()) fail(path, "expected \"X1\" or {\"slot\": \"X1\", \"map\": [...]}");
    if (!need(j, "slot", path + ".").is_string()) fail(path + ".slot", "expected a string");
    Letter l(parse_slot(j.at("slot").get<std::string>()));
    if (j.contains("map")) l.map = get_matrix(j.at("map"), d, d, path + ".map");
    return l;
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.rfind("scenario field", 0) == 0) throw;
    fail(path, msg);
  }
}

Subspace ideal_from_json(const Json& j, const LieAlgebra& a, const std::string& path) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "full" || s == "g") return Subspace::full(a.dim());
    if (s == "derived") return derived_algebra(a);
    fail(path, "expected \"full\", \"derived\" or a list of spanning vectors");
  }
  if (!j.is_array()) fail(path, "expected \"full\", \"derived\" or a list of spanning vectors");
  if (j.empty()) return Subspace::zero(a.dim());
  Matrix gen(a.dim(), static_cast<Eigen::Index>(j.size()));
  for (std::size_t c = 0; c < j.size(); ++c) {
    const std::string p = path + "[" + std::to_string(c) + "]";
    if (j[c].is_string()) {
      const int idx = a.index_of(j[c].get<std::string>());
      if (idx < 0) fail(p, "unknown basis label");
      gen.col(static_cast<Eigen::Index>(c)) = Vector::Unit(a.dim(), idx);
    } else {
      gen.col(static_cast<Eigen::Index>(c)) = element_from_json(j[c], a, p);
    }
  }
  return Subspace::span(gen);
}

ExoSignal signal_from_json(const Json& j, int r, const LieAlgebra& a, NormKind norm, const std::string& path) {
  const int d = a.dim();
  if (!j.is_object()) fail(path, "expected an object");
  const std::string type = need(j, "type", path + ".").is_string() ? j.at("type").get<std::string>() : "";
  ExoSignal w;
  auto stacked = [&](const Json& v, const std::string& p) {
    if (v.is_array() && v.size() == static_cast<std::size_t>(r) && r > 0 && !v[0].is_number()) {
      Vector out(static_cast<Eigen::Index>(r) * d);
      for (int s = 0; s < r; ++s)
        out.segment(static_cast<Eigen::Index>(s) * d, d) = element_from_json(v[static_cast<std::size_t>(s)], a, p);
      return out;
    }
    return get_vector(v, static_cast<Eigen::Index>(r) * d, p);
  };
  if (type == "zero") {
    w = ExoSignal::zero(r, d);
  } else if (type == "geometric") {
    const double s = j.contains("s") ? get_number(j.at("s"), path + ".s") : 1.0;
    w = ExoSignal::geometric(stacked(need(j, "w0", path + "."), path + ".w0"), s, r, d, norm);
  } else if (type == "samples") {
    const Json& vals = need(j, "values", path + ".");
    if (!vals.is_array() || vals.empty()) fail(path + ".values", "expected a non-empty array");
    std::vector<Vector> v;
    for (std::size_t k = 0; k < vals.size(); ++k) v.push_back(stacked(vals[k], path + ".values[" + std::to_string(k) + "]"));
    w = ExoSignal::samples(std::move(v), r, d);
  } else {
    fail(path + ".type", "expected zero, geometric or samples");
  }
  if (j.contains("beta") || j.contains("envelope_s"))
    w.set_envelope(j.contains("beta") ? get_number(j.at("beta"), path + ".beta") : w.beta(),
                   j.contains("envelope_s") ? get_number(j.at("envelope_s"), path + ".envelope_s") : w.s());
  if (j.contains("ideal_valued")) w.set_ideal_valued(j.at("ideal_valued").get<bool>());
  return w;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string slot_label(const LieAlgebra& a, int slot, int i) {
  const std::string base = a.labels().size() == static_cast<std::size_t>(a.dim()) ? a.labels()[static_cast<std::size_t>(i)]
                                                                                 : "e" + std::to_string(i + 1);
  return "X" + std::to_string(slot + 1) + "." + base;
}

}  // namespace

Slot parse_slot(const std::string& label) {
  if (label.size() < 2 || (label[0] != 'X' && label[0] != 'W'))
    throw InputError("letter '" + label + "' must look like X1 or W2");
  int idx = 0;
  try {
    std::size_t used = 0;
    idx = std::stoi(label.substr(1), &used);
    if (used != label.size() - 1) throw InputError("");
  } catch (const std::exception&) {
    throw InputError("letter '" + label + "' must look like X1 or W2");
  }
  if (idx < 1) throw InputError("letter '" + label + "' uses 1-based slot numbers");
  return label[0] == 'X' ? Slot::X(idx - 1) : Slot::W(idx - 1);
}

LieAlgebra algebra_from_json(const Json& j) {
  if (j.is_string()) {
    try {
      return catalog::by_name(j.get<std::string>());
    } catch (const std::exception& e) {
      fail("algebra", e.what());
    }
  }
  if (!j.is_object()) fail("algebra", "expected a catalog name or an object");
  const int d = get_int(need(j, "dim", "algebra."), "algebra.dim");
  if (d <= 0) fail("algebra.dim", "must be positive");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j.at("labels").is_array() || j.at("labels").size() != static_cast<std::size_t>(d))
      fail("algebra.labels", "expected " + std::to_string(d) + " strings");
    for (const auto& l : j.at("labels")) labels.push_back(l.get<std::string>());
  }
  std::vector<double> c(static_cast<std::size_t>(d) * d * d, 0.0);
  if (j.contains("structure_constants")) {
    const Vector v = get_vector(j.at("structure_constants"), static_cast<Eigen::Index>(c.size()), "algebra.structure_constants");
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = v(static_cast<Eigen::Index>(i));
  } else if (j.contains("brackets")) {
    auto index = [&](const Json& x, const std::string& p) {
      if (x.is_number_integer()) {
        const int v = x.get<int>() - 1;
        if (v < 0 || v >= d) fail(p, "basis index out of range (1-based)");
        return v;
      }
      if (!x.is_string()) fail(p, "expected a label or a 1-based index");
      for (int i = 0; i < d; ++i)
        if (i < static_cast<int>(labels.size()) && labels[static_cast<std::size_t>(i)] == x.get<std::string>()) return i;
      fail(p, "unknown basis label");
    };
    const Json& br = j.at("brackets");
    if (!br.is_array()) fail("algebra.brackets", "expected an array");
    for (std::size_t b = 0; b < br.size(); ++b) {
      const std::string p = "algebra.brackets[" + std::to_string(b) + "]";
      const int x = index(need(br[b], "x", p + "."), p + ".x");
      const int y = index(need(br[b], "y", p + "."), p + ".y");
      const Json& res = need(br[b], "result", p + ".");
      if (!res.is_object()) fail(p + ".result", "expected {label: coefficient}");
      for (const auto& [label, value] : res.items()) {
        const int k = index(Json(label), p + ".result");
        const double v = get_number(value, p + ".result." + label);
        c[(static_cast<std::size_t>(x) * d + y) * d + k] += v;
        c[(static_cast<std::size_t>(y) * d + x) * d + k] -= v;
      }
    }
  } else {
    fail("algebra", "needs structure_constants or brackets");
  }
  try {
    return LieAlgebra(j.value("name", std::string("custom")), d, std::move(c), std::move(labels));
  } catch (const InputError& e) {
    fail("algebra", e.what());
  }
}

Json algebra_to_json(const LieAlgebra& a) {
  Json j;
  j["name"] = a.name();
  j["dim"] = a.dim();
  j["labels"] = a.labels();
  j["structure_constants"] = a.structure_constants();
  return j;
}

Scenario scenario_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("scenario must be a JSON object");
  Scenario s;
  s.name = j.value("name", std::string("scenario"));
  s.description = j.value("description", std::string());
  LieAlgebra a = algebra_from_json(need(j, "algebra", ""));
  const int d = a.dim();
  const int n = get_int(need(j, "n", ""), "n");
  const int r = j.contains("r") ? get_int(j.at("r"), "r") : 0;
  if (n <= 0) fail("n", "must be positive");
  if (r < 0) fail("r", "must be non-negative");
  const Matrix A = get_matrix(need(j, "A", ""), static_cast<Eigen::Index>(n) * d, static_cast<Eigen::Index>(n) * d, "A");

  std::vector<Term> terms;
  if (j.contains("terms")) {
    const Json& jt = j.at("terms");
    if (!jt.is_array()) fail("terms", "expected an array");
    for (std::size_t t = 0; t < jt.size(); ++t) {
      const std::string p = "terms[" + std::to_string(t) + "]";
      Term term;
      const Json& letters = need(jt[t], "letters", p + ".");
      if (!letters.is_array() || letters.empty()) fail(p + ".letters", "expected a non-empty array");
      for (std::size_t l = 0; l < letters.size(); ++l)
        term.word.letters.push_back(letter_from_json(letters[l], d, p + ".letters[" + std::to_string(l) + "]"));
      const Json& coeff = need(jt[t], "coeff", p + ".");
      term.coeff = coeff.is_number() ? Vector::Constant(1, coeff.get<double>()) : get_vector(coeff, n, p + ".coeff");
      if (term.coeff.size() != n) fail(p + ".coeff", "expected " + std::to_string(n) + " entries");
      terms.push_back(std::move(term));
    }
  }

  std::vector<GeneratedFamily> families;
  if (j.contains("families")) {
    const Json& jf = j.at("families");
    if (!jf.is_array()) fail("families", "expected an array");
    for (std::size_t f = 0; f < jf.size(); ++f) {
      const std::string p = "families[" + std::to_string(f) + "]";
      GeneratedFamily fam;
      const Json& base = need(jf[f], "base", p + ".");
      if (!base.is_object()) fail(p + ".base", "expected {\"X1\": coefficient, ...}");
      for (const auto& [label, value] : base.items()) {
        try {
          fam.base.emplace_back(parse_slot(label), get_number(value, p + ".base." + label));
        } catch (const InputError& e) {
          fail(p + ".base", e.what());
        }
      }
      const Json& target = need(jf[f], "target", p + ".");
      if (!target.is_string()) fail(p + ".target", "expected a slot label");
      try {
        fam.target = parse_slot(target.get<std::string>());
      } catch (const InputError& e) {
        fail(p + ".target", e.what());
      }
      fam.output = get_int(need(jf[f], "output", p + "."), p + ".output") - 1;
      if (jf[f].contains("scale")) fam.scale = get_number(jf[f].at("scale"), p + ".scale");
      if (jf[f].contains("cutoff")) fam.cutoff = get_int(jf[f].at("cutoff"), p + ".cutoff");
      if (jf[f].contains("tail_tolerance")) fam.tail_tolerance = get_number(jf[f].at("tail_tolerance"), p + ".tail_tolerance");
      families.push_back(std::move(fam));
    }
  }

  const Subspace ideal = j.contains("ideal") ? ideal_from_json(j.at("ideal"), a, "ideal") : derived_algebra(a);
  NormKind norm = NormKind::Sum;
  if (j.contains("norm")) {
    const std::string nk = j.at("norm").get<std::string>();
    if (nk == "euclidean") norm = NormKind::Euclidean;
    else if (nk != "sum") fail("norm", "expected sum or euclidean");
  }
  const double mu = j.contains("mu") ? get_number(j.at("mu"), "mu") : 0.0;
  s.system = make_system(s.name, a, n, r, A, std::move(terms), std::move(families), ideal, norm, mu);
  s.signal = j.contains("signal") ? signal_from_json(j.at("signal"), r, s.system.algebra, norm, "signal")
                                  : ExoSignal::zero(r, d);
  if (j.contains("x0")) {
    const Json& x0 = j.at("x0");
    if (x0.is_array() && static_cast<int>(x0.size()) == n && n > 0 && !x0[0].is_number()) {
      s.X0 = Vector(static_cast<Eigen::Index>(n) * d);
      for (int k = 0; k < n; ++k)
        s.X0.segment(static_cast<Eigen::Index>(k) * d, d) =
            element_from_json(x0[static_cast<std::size_t>(k)], s.system.algebra, "x0[" + std::to_string(k) + "]");
    } else {
      s.X0 = get_vector(x0, static_cast<Eigen::Index>(n) * d, "x0");
    }
  }
  if (j.contains("horizon")) {
    const int h = get_int(j.at("horizon"), "horizon");
    if (h < 0) fail("horizon", "must be non-negative");
    s.horizon = h;
  }
  if (j.contains("M")) s.M = get_number(j.at("M"), "M");
  else if (s.X0.size() > 0) s.M = std::max(1.0, product_norm(s.X0, d, norm));
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  try {
    return scenario_from_json(j);
  } catch (const Json::exception& e) {
    throw InputError(path + ": " + e.what());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

namespace {

Json signal_to_json(const ExoSignal& w) {
  Json j;
  switch (w.kind()) {
    case ExoSignal::Kind::Zero:
      j["type"] = "zero";
      break;
    case ExoSignal::Kind::Geometric:
      j["type"] = "geometric";
      j["w0"] = vec(w.at(0));
      j["s"] = w.s();
      break;
    case ExoSignal::Kind::Samples: {
      j["type"] = "samples";
      Json vals = Json::array();
      for (const auto& v : w.sample_values()) vals.push_back(vec(v));
      j["values"] = vals;
      break;
    }
    case ExoSignal::Kind::Function:
      // Generated in code; recorded for reference only and not loadable.
      j["type"] = "function";
      break;
  }
  if (!w.description().empty()) j["description"] = w.description();
  if (w.has_envelope()) {
    j["beta"] = num(w.beta());
    j["envelope_s"] = w.s();
  }
  j["ideal_valued"] = w.ideal_valued();
  return j;
}

}  // namespace

Json scenario_to_json(const Scenario& s) {
  const ClassASystem& sys = s.system;
  Json j;
  j["name"] = s.name;
  j["description"] = s.description;
  j["algebra"] = algebra_to_json(sys.algebra);
  j["n"] = sys.n;
  j["r"] = sys.r;
  j["A"] = mat(sys.A);
  Json terms = Json::array();
  for (const auto& t : sys.terms) {
    Json letters = Json::array();
    for (const auto& l : t.word.letters) {
      if (l.has_map()) letters.push_back({{"slot", l.slot.label()}, {"map", mat(l.map)}});
      else letters.push_back(l.slot.label());
    }
    terms.push_back({{"letters", letters}, {"coeff", vec(t.coeff)}});
  }
  j["terms"] = terms;
  Json fams = Json::array();
  for (const auto& f : sys.families) {
    Json base = Json::object();
    for (const auto& [slot, c] : f.base) base[slot.label()] = c;
    fams.push_back({{"base", base}, {"target", f.target.label()}, {"output", f.output + 1}, {"scale", f.scale},
                    {"cutoff", f.cutoff}, {"tail_tolerance", f.tail_tolerance}});
  }
  j["families"] = fams;
  Json ideal = Json::array();
  for (Eigen::Index c = 0; c < sys.ideal.basis().cols(); ++c) ideal.push_back(vec(sys.ideal.basis().col(c)));
  j["ideal"] = ideal;
  j["norm"] = sys.norm == NormKind::Sum ? "sum" : "euclidean";
  j["mu"] = sys.mu;
  j["signal"] = signal_to_json(s.signal);
  j["x0"] = vec(s.X0);
  j["horizon"] = s.horizon;
  j["M"] = s.M;
  return j;
}

std::string trajectory_csv(const ClassASystem& sys, const Trajectory& tr, const std::string& title) {
  std::ostringstream os;
  os << "# " << title << "\n";
  os << "# norm: " << (sys.norm == NormKind::Sum ? "sum of slot Euclidean norms" : "Euclidean")
     << "; qnorm_i is the quotient norm modulo the i-th ideal of the chain\n";
  os << "k";
  for (int s = 0; s < sys.n; ++s)
    for (int i = 0; i < sys.d(); ++i) os << "," << slot_label(sys.algebra, s, i);
  os << ",norm";
  for (int l = 0; l < sys.levels(); ++l) os << ",qnorm_" << l;
  for (int s = 0; s < sys.n; ++s) os << ",norm_X" << s + 1;
  os << "\n";
  for (std::size_t k = 0; k < tr.states.size(); ++k) {
    os << k;
    for (Eigen::Index i = 0; i < tr.states[k].size(); ++i) os << "," << fmt(tr.states[k](i));
    os << "," << fmt(tr.norms[k]);
    for (double q : tr.qnorms[k]) os << "," << fmt(q);
    for (int s = 0; s < sys.n; ++s) os << "," << fmt(tr.slot_norm(k, s));
    os << "\n";
  }
  return os.str();
}

Json trajectory_json(const ClassASystem& sys, const Trajectory& tr) {
  Json j;
  j["system"] = sys.name;
  j["steps"] = tr.states.empty() ? 0 : tr.states.size() - 1;
  j["diverged"] = tr.diverged;
  j["first_divergent_index"] = tr.first_bad;
  j["norms"] = nums(tr.norms);
  Json q = Json::array();
  for (const auto& row : tr.qnorms) q.push_back(nums(row));
  j["quotient_norms"] = q;
  Json states = Json::array();
  for (const auto& x : tr.states) states.push_back(vec(x));
  j["states"] = states;
  return j;
}

Json to_json(const NilpotentCertificate& c) {
  return {{"kind", "nilpotent"},
          {"issued", c.issued},
          {"reason", c.reason},
          {"p", c.p},
          {"n", c.n},
          {"r", c.r},
          {"s", c.s},
          {"s_input", c.s_input},
          {"beta", num(c.beta)},
          {"mu", c.mu},
          {"M", c.M},
          {"rho_A", c.rho_A},
          {"threshold", c.threshold},
          {"margin", c.margin()},
          {"epsilon", c.epsilon},
          {"Lambda", c.Lambda},
          {"rho_levels", nums(c.rho_levels)},
          {"Lambda_levels", nums(c.Lambda_levels)},
          {"lambda_levels", nums(c.lambda_levels)},
          {"lambda_closed_form", nums(c.lambda_closed)},
          {"sigma_levels", nums(c.sigma_levels)},
          {"sigma_adapted", nums(c.sigma_adapted)},
          {"gamma_levels", nums(c.gamma_levels)},
          {"alpha_levels", nums(c.alpha_levels)},
          {"ladder_consistent", c.ladder_consistent},
          {"max_at_top", c.max_at_top},
          {"alpha", num(c.alpha())},
          {"lambda", num(c.lambda())}};
}

Json to_json(const SolvableReport& r) {
  Json j = {{"kind", "solvable"},
            {"issued", r.issued},
            {"conditional", r.conditional},
            {"reason", r.reason},
            {"rho_A", r.rho_A},
            {"schur", r.schur},
            {"schur_margin", r.schur_margin},
            {"p", r.p},
            {"ideal_residual_max", r.ideal_residual_max},
            {"ideal_residual_tail", r.ideal_residual_tail},
            {"input_converges_to_ideal", r.input_converges_to_ideal},
            {"caveat", r.caveat},
            {"warnings", r.warnings},
            {"final_norms", nums(r.final_norms)},
            {"simulated_decay", r.simulated_decay}};
  j["nilpotent_cross_check"] = r.nilpotent_verdict ? Json(*r.nilpotent_verdict) : Json(nullptr);
  return j;
}

Json to_json(const DeadbeatCertificate& c) {
  return {{"kind", "deadbeat"},     {"p", c.p},          {"n", c.n},
          {"d", c.d},               {"ideal_dims", c.ideal_dims}, {"level_horizons", c.level_horizons},
          {"horizon", c.horizon},   {"rho_A", c.rho_A},  {"nilpotent_power_check", c.nilpotent_power_check}};
}

Json to_json(const DeadbeatRunReport& r) {
  return {{"runs", r.runs},
          {"max_after_horizon", r.max_after_horizon},
          {"max_after_level", nums(r.max_after_level)},
          {"first_zero_max", r.first_zero_max},
          {"passed", r.passed()}};
}

Json to_json(const EnvelopeFit& f) {
  return {{"alpha", num(f.alpha)},         {"lambda", num(f.lambda)},         {"certified", f.certified},
          {"samples", f.samples},          {"note", f.note},                  {"fresh_runs", f.fresh_runs},
          {"fresh_violations", f.fresh_violations}, {"fresh_worst_ratio", num(f.fresh_worst_ratio)}};
}

Json to_json(const EquilibriumReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations) v.push_back(vec(x));
  return {{"passed", r.passed()},
          {"structural_ok", r.structural_ok},
          {"structural_issues", r.structural_issues},
          {"starts", r.starts},
          {"nonzero_fixed_points", v},
          {"linear_certificate", r.linear_certificate},
          {"linear_argument", r.linear_argument}};
}

Json to_json(const InvarianceReport& r) {
  return {{"passed", r.passed()},
          {"level_residuals", nums(r.level_residuals)},
          {"letter_map_residual", r.letter_map_residual},
          {"nonlinear_residual", r.nonlinear_residual}};
}

Json to_json(const JacobianReport& r) {
  return {{"passed", r.passed()},
          {"steps", r.steps},
          {"coord_error_X", nums(r.coord_error_X)},
          {"coord_error_W", nums(r.coord_error_W)},
          {"direction_error", nums(r.direction_error)},
          {"observed_order", r.observed_order},
          {"exact", r.exact}};
}

Json to_json(const MajorantReport& r) {
  return {{"value", num(r.value)}, {"finite", r.finite}, {"per_length", nums(r.per_length)}};
}

Json to_json(const RadiusEstimate& r) {
  return {{"limsup", r.limsup}, {"rho1", r.rho1}, {"rho2", r.rho2}, {"radius", r.radius}, {"warnings", r.warnings}};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

}  // namespace liestab
