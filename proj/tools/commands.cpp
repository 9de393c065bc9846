#include "commands.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "demos.hpp"
#include "frame_spec.hpp"
#include "goh/dynamics.hpp"
#include "goh/errors.hpp"
#include "goh/normal_form.hpp"
#include "goh/stratify.hpp"

namespace goh::cli {

namespace {

using Json = nlohmann::ordered_json;

class InputError : public Error {
 public:
  using Error::Error;
  std::string_view kind() const noexcept override { return "input"; }
};

struct Report {
  Json inputs = Json::object();
  Json results = Json::object();
  std::string text;
  std::optional<std::uint64_t> seed;
  int status = kExitOk;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::vector<std::string> strings(const std::vector<Polynomial>& polys) {
  std::vector<std::string> out;
  for (const auto& p : polys) out.push_back(p.to_string());
  return out;
}

std::vector<std::string> strings(const std::vector<Rational>& values) {
  std::vector<std::string> out;
  for (const auto& q : values) out.push_back(to_string(q));
  return out;
}

std::vector<std::string> strings(const std::vector<double>& values) {
  std::vector<std::string> out;
  for (double v : values) out.push_back(fmt(v));
  return out;
}

Json calibration_json() {
  const auto& c = PfaffianCalibration::instance();
  Json rec = Json::object(), der = Json::object();
  for (std::size_t s = 2; s <= PfaffianCalibration::kMaxSize; s += 2) {
    rec[std::to_string(s)] = to_string(c.recursion(s));
    der[std::to_string(s)] = to_string(c.derivative(s));
  }
  return {{"recursion", rec}, {"derivative", der}};
}

struct Loaded {
  FrameSpec spec;
  Frame frame;
  GohMatrix goh;
};

Loaded load_frame(const std::string& path, std::istream& in) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw InputError("cannot open frame file " + path);
    text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("malformed frame JSON", e.byte > 0 ? e.byte - 1 : 0);
  }
  FrameSpec spec = FrameSpec::from_json(doc);
  Frame frame = spec.build();
  GohMatrix goh = goh_matrix(frame);
  return {std::move(spec), std::move(frame), std::move(goh)};
}

std::string frame_header(const Loaded& f) {
  std::string out = "frame " + (f.spec.name.empty() ? std::string("(unnamed)") : f.spec.name) +
                    ": n = " + std::to_string(f.frame.dimension()) + ", m = " + std::to_string(f.frame.rank());
  if (f.frame.is_corank_one()) out += ", corank-one normal form";
  out += "\n";
  if (!f.spec.description.empty()) out += "  " + f.spec.description + "\n";
  return out;
}

Json frame_inputs(const Loaded& f) {
  return {{"frame", f.spec.name.empty() ? Json(nullptr) : Json(f.spec.name)},
          {"dimension", f.frame.dimension()},
          {"rank", f.frame.rank()}};
}

Json matrix_json(const SkewMatrix<Polynomial>& a) {
  Json rows = Json::array();
  for (std::size_t i = 1; i <= a.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 1; j <= a.size(); ++j) row.push_back(a.entry(i, j).to_string());
    rows.push_back(row);
  }
  return rows;
}

std::string matrix_text(const SkewMatrix<Polynomial>& a, const std::string& label) {
  std::string out;
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = i + 1; j <= a.size(); ++j)
      out += "  " + label + "[" + std::to_string(i) + "," + std::to_string(j) + "] = " + a.upper(i, j).to_string() + "\n";
  return out;
}

std::size_t default_rank(const Loaded& f) {
  const std::size_t g = generic_goh_rank(f.frame, f.goh);
  return g < f.frame.rank() ? g : f.frame.rank() - 2;
}

IndexSet parse_index_set(std::string text) {
  std::vector<std::size_t> el;
  for (char& c : text)
    if (c == '{' || c == '}' || c == ',') c = ' ';
  std::istringstream is(text);
  long v = 0;
  while (is >> v) {
    if (v < 1) throw InputError("index set elements must be positive");
    el.push_back(static_cast<std::size_t>(v));
  }
  if (!is.eof()) throw InputError("malformed index set");
  if (el.empty()) throw InputError("empty index set");
  return IndexSet(std::move(el));
}

std::vector<double> parse_point(const std::string& text, std::size_t n) {
  std::vector<double> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw InputError("malformed coordinate \"" + item + "\"");
    }
  }
  if (out.size() != n) throw InputError("point needs " + std::to_string(n) + " coordinates");
  return out;
}

AbnormalGenerator find_generator(const Loaded& f, const IndexSet& set) {
  if (set.size() % 2 == 0) throw InputError("generator index sets have odd size r + 1");
  const std::size_t r = set.size() - 1;
  if (set.elements().back() > f.frame.rank()) throw InputError("index set exceeds the frame rank");
  for (auto& g : abnormal_generators(f.frame, f.goh, r))
    if (g.set == set) return g;
  throw InputError("no generator for " + set.to_string());
}

// ------------------------------------------------------------- commands

Report cmd_goh(const Loaded& f) {
  Report r;
  r.inputs = frame_inputs(f);
  r.results["H"] = matrix_json(f.goh.full);
  r.results["H_reduced"] = f.goh.reduced ? matrix_json(*f.goh.reduced) : Json(nullptr);
  r.text = frame_header(f) + "Goh matrix, h^ij = p . [X^i, X^j]:\n" + matrix_text(f.goh.full, "h");
  if (f.goh.reduced)
    r.text += "reduced matrix, H = p" + std::to_string(f.frame.dimension()) + " * H~:\n" + matrix_text(*f.goh.reduced, "H~");
  return r;
}

Report cmd_pfaffian(const Loaded& f, std::size_t size) {
  if (size > f.frame.rank()) throw InputError("minor size exceeds the frame rank");
  Report r;
  r.inputs = frame_inputs(f);
  r.inputs["minors"] = size;
  const bool reduced = f.goh.reduced.has_value();
  const auto& a = reduced ? *f.goh.reduced : f.goh.full;
  PfaffianTable<Polynomial> table(a);
  Json minors = Json::array();
  r.text = frame_header(f) + "Pfaffian minors of size " + std::to_string(size) + " of " +
           (reduced ? "the reduced matrix H~" : "H") + ":\n";
  for (const IndexSet& set : subsets(a.size(), size)) {
    const std::string value = table(set).to_string();
    minors.push_back({{"set", set.to_string()}, {"value", value}});
    r.text += "  phi" + set.to_string() + " = " + value + "\n";
  }
  r.results["matrix"] = reduced ? "reduced" : "full";
  r.results["minors"] = minors;
  return r;
}

Report cmd_generators(const Loaded& f, std::optional<std::size_t> rank) {
  const std::size_t r = rank ? *rank : default_rank(f);
  Report rep;
  rep.inputs = frame_inputs(f);
  rep.inputs["rank"] = r;
  Json list = Json::array();
  rep.text = frame_header(f) + "generators for r = " + std::to_string(r) + ":\n";
  auto degree = [](const PDegree& d) { return d.zero ? Json("zero") : d.degree ? Json(*d.degree) : Json(nullptr); };
  auto degree_text = [](const PDegree& d) {
    return d.zero ? std::string("zero") : d.degree ? std::to_string(*d.degree) : std::string("mixed");
  };
  for (const auto& g : abnormal_generators(f.frame, f.goh, r)) {
    Json item{{"set", g.set.to_string()},
              {"y", strings(g.y.components())},
              {"x_block_p_degree", degree(g.degrees.x_block)},
              {"p_block_p_degree", degree(g.degrees.p_block)}};
    rep.text += "  Y" + g.set.to_string() + " = " + g.y.to_string() + "\n";
    rep.text += "    p-degrees: x-block " + degree_text(g.degrees.x_block) + ", p-block " + degree_text(g.degrees.p_block) + "\n";
    if (g.z) {
      item["z"] = strings(g.z->components());
      item["frame_coefficients"] = strings(g.frame_coefficients);
      rep.text += "  Z" + g.set.to_string() + " = " + g.z->to_string() + "\n";
    } else {
      item["z"] = nullptr;
    }
    list.push_back(item);
  }
  rep.results["generators"] = list;
  return rep;
}

Report cmd_certify(const Loaded& f, std::optional<std::size_t> rank) {
  Report rep;
  rep.inputs = frame_inputs(f);
  std::vector<std::size_t> ranks;
  if (rank) {
    ranks.push_back(*rank);
  } else {
    for (std::size_t r = 0; r < f.frame.rank(); r += 2) ranks.push_back(r);
  }
  rep.inputs["ranks"] = ranks;
  rep.results["convention"] = kTripleBracketConvention;
  Json certs = Json::array();
  bool all_valid = true;
  rep.text = frame_header(f) + "triple bracket convention " + kTripleBracketConvention + "\n";
  for (std::size_t r : ranks) {
    for (const auto& g : abnormal_generators(f.frame, f.goh, r)) {
      const auto c = compute_divergence_certificate(g, f.frame, f.goh);
      all_valid = all_valid && c.valid();
      Json item{{"set", g.set.to_string()},
                {"rank", r},
                {"phase_divergence", c.phase_divergence.to_string()},
                {"jacobi_expansion", c.jacobi_expansion.to_string()}};
      rep.text += "  " + g.set.to_string() + " r=" + std::to_string(r) + ": div Y = " + c.phase_divergence.to_string() +
                  ", Jacobi expansion = " + c.jacobi_expansion.to_string();
      if (c.base) {
        item["base"] = {{"divergence", c.base->divergence.to_string()},
                        {"constant", c.base->constant ? Json(to_string(*c.base->constant)) : Json(nullptr)},
                        {"coefficients", strings(c.base->coefficients)},
                        {"residual", c.base->residual.to_string()}};
        rep.text += ", div Z = " + c.base->divergence.to_string();
        if (c.base->constant) {
          rep.text += " = " + to_string(*c.base->constant) + " * sum_j d_x" + std::to_string(f.frame.dimension()) +
                      "(A_j) Z(x_j)";
        } else {
          rep.text += " (combination trivially zero)";
        }
        rep.text += ", residual " + c.base->residual.to_string();
      } else {
        item["base"] = nullptr;
      }
      item["valid"] = c.valid();
      rep.text += c.valid() ? "  [ok]\n" : "  [FAILED]\n";
      certs.push_back(item);
    }
  }
  rep.results["certificates"] = certs;
  rep.results["all_valid"] = all_valid;
  rep.text += all_valid ? "all certificates valid\n" : "certificate failure\n";
  rep.status = all_valid ? kExitOk : kExitCertificate;
  return rep;
}

Json witness_json(const Witness& w) {
  Json j{{"source", w.source == Witness::Source::sample ? "sample" : "line"},
         {"kernel_dim", w.kernel_dim},
         {"x", w.x},
         {"p", w.p}};
  j["x_exact"] = w.exact ? Json(strings(w.exact->x)) : Json(nullptr);
  return j;
}

Report cmd_stratify(const Loaded& f, const StratifyConfig& config) {
  Report rep;
  rep.inputs = frame_inputs(f);
  rep.inputs["samples"] = config.samples;
  rep.inputs["lines"] = config.lines;
  rep.inputs["box"] = {config.lower, config.upper};
  rep.inputs["tolerance"] = config.tolerance;
  rep.seed = config.seed;
  const Stratification s = stratify(f.frame, f.goh, config);
  std::vector<std::string> dims;
  for (auto d : s.dims()) dims.push_back(std::to_string(d));
  rep.results["generic_rank"] = s.generic_rank;
  rep.results["dims"] = s.dims();
  rep.results["samples"] = s.samples;
  rep.results["lines"] = s.lines;
  rep.results["float_disagreements"] = s.float_disagreements;
  rep.text = frame_header(f) + "kernel dimensions: {" + join(dims) + "}\n";
  rep.text += "generic Goh rank " + std::to_string(s.generic_rank) + ", " + std::to_string(s.samples) + " samples, " +
              std::to_string(s.lines) + " lines, " + std::to_string(s.float_disagreements) + " float/exact disagreements\n";
  Json levels = Json::array();
  for (const auto& level : s.levels) {
    Json loci = Json::array();
    for (const auto& [set, phi] : level.vanishing_loci) loci.push_back({{"set", set.to_string()}, {"value", phi.to_string()}});
    Json witnesses = Json::array();
    for (const auto& w : level.witnesses) witnesses.push_back(witness_json(w));
    levels.push_back({{"kernel_dim", level.kernel_dim},
                      {"rank", level.rank},
                      {"observations", level.observations},
                      {"vanishing_loci", loci},
                      {"witnesses", witnesses}});
    rep.text += "  kernel dim " + std::to_string(level.kernel_dim) + " (rank " + std::to_string(level.rank) + "): " +
                std::to_string(level.observations) + " observations\n";
    for (const auto& [set, phi] : level.vanishing_loci) rep.text += "    vanishing: phi" + set.to_string() + " = " + phi.to_string() + "\n";
    for (const auto& w : level.witnesses) {
      rep.text += std::string("    witness (") + (w.source == Witness::Source::sample ? "sample" : "line") +
                  (w.exact ? ", exact" : "") + ") x = (" + join(w.exact ? strings(w.exact->x) : strings(w.x)) + ")\n";
    }
  }
  rep.results["levels"] = levels;
  return rep;
}

Report cmd_singular_set(const Loaded& f, std::optional<std::size_t> rank) {
  const std::size_t r = rank ? *rank : generic_goh_rank(f.frame, f.goh);
  Report rep;
  rep.inputs = frame_inputs(f);
  rep.inputs["rank"] = r;
  Json eqs = Json::array();
  std::size_t zero = 0;
  rep.text = frame_header(f) + "singular set: common zeros of the size-" + std::to_string(r) + " reduced Pfaffian minors\n";
  for (const auto& [set, phi] : singular_set_equations(f.frame, f.goh, r)) {
    if (phi.is_zero()) {
      ++zero;
      continue;
    }
    eqs.push_back({{"set", set.to_string()}, {"value", phi.to_string()}});
    rep.text += "  phi" + set.to_string() + " = " + phi.to_string() + "\n";
  }
  rep.text += "  (" + std::to_string(zero) + " minors vanish identically)\n";
  rep.results["equations"] = eqs;
  rep.results["identically_zero"] = zero;
  return rep;
}

Report cmd_normalform(const Loaded& f, std::uint32_t order) {
  Report rep;
  rep.inputs = frame_inputs(f);
  rep.inputs["order"] = order;
  const auto result = normalize_frame(JetFrame::from_frame(f.frame, order));
  Json basis = Json::array();
  rep.text = frame_header(f) + "linear change x = B y, B =\n";
  for (std::size_t i = 0; i < result.basis.rows(); ++i) {
    std::vector<std::string> row;
    for (std::size_t j = 0; j < result.basis.cols(); ++j) row.push_back(to_string(result.basis(i, j)));
    basis.push_back(row);
    rep.text += "  [" + join(row) + "]\n";
  }
  FrameSpec out;
  out.name = f.spec.name.empty() ? "normalized" : f.spec.name + "-normalized";
  out.description = "order " + std::to_string(order) + " jet normal form";
  out.dimension = f.frame.dimension();
  out.rank = f.frame.rank();
  const Frame normalized = result.frame.to_frame();
  if (normalized.is_corank_one()) {
    out.normal_form = strings(*normalized.normal_form());
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& x : normalized.fields()) rows.push_back(strings(x.components()));
    out.fields = rows;
  }
  rep.text += "stage " + result.frame.stage().to_string() + ", fields truncated at order " + std::to_string(order) + ":\n";
  for (std::size_t i = 0; i < normalized.rank(); ++i)
    rep.text += "  X" + std::to_string(i + 1) + " = " + normalized.field(i).to_string() + "\n";
  rep.results["basis"] = basis;
  rep.results["stage"] = result.frame.stage().to_string();
  rep.results["frame"] = out.to_json();
  return rep;
}

Report cmd_integrate(const Loaded& f, const std::string& field, const std::string& from, double horizon, double step,
                     bool csv) {
  const IndexSet set = parse_index_set(field);
  const auto start = parse_point(from, f.frame.dimension());
  if (!f.frame.is_corank_one()) throw InputError("integrate needs a frame in corank-one normal form");
  const AbnormalGenerator g = find_generator(f, set);
  const Trajectory t = abnormal_trajectory(f.frame, f.goh, g, start, horizon, step);
  Report rep;
  rep.inputs = frame_inputs(f);
  rep.inputs["field"] = set.to_string();
  rep.inputs["from"] = start;
  rep.inputs["T"] = horizon;
  rep.inputs["h"] = step;
  double max_b = 0.0, max_c = 0.0;
  for (double v : t.goh_residual) max_b = std::max(max_b, v);
  for (double v : t.annihilation_residual) max_c = std::max(max_c, v);
  rep.results["steps"] = t.times.size() - 1;
  rep.results["end_state"] = t.states.back();
  rep.results["certified"] = t.certified;
  rep.results["max_goh_residual"] = max_b;
  rep.results["max_annihilation_residual"] = max_c;
  rep.results["failure"] = t.failure;
  rep.status = t.certified ? kExitOk : kExitCertificate;
  if (csv) {
    rep.text = trajectory_csv(t, 0);
  } else {
    rep.text = frame_header(f) + "Z" + set.to_string() + " = " + g.z->to_string() + "\n";
    rep.text += "RK4 with h = " + fmt(step) + " to T = " + fmt(horizon) + " (" + std::to_string(t.times.size() - 1) + " steps)\n";
    rep.text += "end state: (" + join(strings(t.states.back())) + ")\n";
    rep.text += "max Goh residual " + fmt(max_b) + ", max annihilation residual " + fmt(max_c) + "\n";
    rep.text += t.certified ? "trajectory certified\n" : "certification failed: " + t.failure + "\n";
  }
  return rep;
}

Report cmd_scan(const Loaded& f, const std::optional<std::string>& field, std::size_t samples, std::uint64_t seed,
                double cutoff, double lower, double upper) {
  if (!f.frame.is_corank_one()) throw InputError("scan-div needs a frame in corank-one normal form");
  AbnormalGenerator g;
  if (field) {
    g = find_generator(f, parse_index_set(*field));
  } else {
    g = abnormal_generators(f.frame, f.goh, default_rank(f)).front();
  }
  const DivergenceScan s = divergence_ratio_scan(*g.z, lower, upper, samples, seed, cutoff);
  Report rep;
  rep.seed = seed;
  rep.inputs = frame_inputs(f);
  rep.inputs["field"] = g.set.to_string();
  rep.inputs["samples"] = samples;
  rep.inputs["cutoff"] = cutoff;
  rep.inputs["box"] = {lower, upper};
  rep.results["divergence"] = divergence(*g.z).to_string();
  rep.results["ratio_sup"] = s.ratio_sup;
  rep.results["argmax"] = s.argmax;
  rep.results["counted"] = s.counted;
  rep.results["excluded"] = s.excluded;
  rep.results["offender_count"] = s.offender_count;
  rep.results["offenders"] = s.offenders;
  rep.text = frame_header(f) + "Z" + g.set.to_string() + " = " + g.z->to_string() + "\n";
  rep.text += "div Z = " + divergence(*g.z).to_string() + "\n";
  rep.text += "estimated sup |div Z| / |Z| = " + fmt(s.ratio_sup) + " over " + std::to_string(s.counted) +
              " samples (|Z| >= " + fmt(cutoff) + "), " + std::to_string(s.excluded) + " excluded, " +
              std::to_string(s.offender_count) + " within 2x of the cutoff\n";
  return rep;
}

void print_error(const Error& e, const std::string& command, bool json, std::ostream& out, std::ostream& err) {
  if (json) {
    Json error{{"kind", std::string(e.kind())}, {"message", e.what()}};
    if (const auto* pe = dynamic_cast<const ParseError*>(&e)) error["offset"] = pe->offset();
    if (const auto* cf = dynamic_cast<const CertificateFailure*>(&e)) error["residual"] = cf->residual();
    out << Json{{"command", command}, {"error", error}}.dump(2) << "\n";
  } else {
    err << "goh: " << e.what() << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Goh matrices, Pfaffian kernel generators, divergence certificates and abnormal flows of "
               "polynomial distributions.",
               "goh"};
  // -h would clash with the integrator step option --h.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  std::string input = "-";
  app.add_flag("--json", json, "Machine-readable JSON report (also for errors)");
  app.add_option("-i,--input", input, "Frame JSON file, '-' for stdin")->capture_default_str();

  auto* goh = app.add_subcommand("goh", "Print the Goh matrix H and, in corank one, the reduced H~");
  auto* pfaff = app.add_subcommand("pfaffian", "Print Pfaffian minors");
  std::size_t minors = 2;
  pfaff->add_option("--minors", minors, "Minor size (even)")->required();
  auto* gens = app.add_subcommand("generators", "Print the generators Y_I and projections Z_I");
  std::optional<std::size_t> rank;
  gens->add_option("--rank", rank, "Even rank r < m (default: generic Goh rank)");
  auto* cert = app.add_subcommand("certify", "Divergence certificates; exit 2 on failure");
  cert->add_option("--rank", rank, "Single even rank (default: every even r < m)");
  auto* strat = app.add_subcommand("stratify", "Kernel-dimension stratification by seeded sampling");
  StratifyConfig config;
  std::uint64_t seed = 0;
  strat->add_option("--samples", config.samples, "Number of samples")->capture_default_str();
  strat->add_option("--seed", config.seed, "Sampling seed")->required();
  strat->add_option("--lines", config.lines, "Random lines searched for lower-rank points")->capture_default_str();
  strat->add_option("--lower", config.lower, "Box lower bound")->capture_default_str();
  strat->add_option("--upper", config.upper, "Box upper bound")->capture_default_str();
  auto* sing = app.add_subcommand("singular-set", "Reduced Pfaffian minors cutting out the singular set");
  sing->add_option("--rank", rank, "Minor size (default: generic Goh rank)");
  auto* nf = app.add_subcommand("normalform", "Jet normal form of the frame");
  std::uint32_t order = 3;
  nf->add_option("--order", order, "Jet order d")->capture_default_str();
  auto* integ = app.add_subcommand("integrate", "Integrate Z_I with RK4 and certify the abnormal lift");
  std::string field, from;
  double horizon = 1.0, step = 1e-3;
  bool csv = false;
  integ->add_option("--field", field, "Index set I, e.g. 1,2,3")->required();
  integ->add_option("--from", from, "Start point x0, comma separated")->required();
  integ->add_option("--T", horizon, "Final time")->capture_default_str();
  integ->add_option("--h", step, "Step size")->capture_default_str();
  integ->add_flag("--csv", csv, "Print the trajectory as CSV");
  auto* scan = app.add_subcommand("scan-div", "Estimate sup |div Z| / |Z| on a box");
  std::optional<std::string> scan_field;
  std::size_t scan_samples = 4096;
  double cutoff = 1e-3, lower = -1.0, upper = 1.0;
  scan->add_option("--field", scan_field, "Index set I (default: first generator)");
  scan->add_option("--samples", scan_samples, "Number of samples")->capture_default_str();
  scan->add_option("--seed", seed, "Sampling seed")->capture_default_str();
  scan->add_option("--cutoff", cutoff, "Exclude samples with |Z| below this")->capture_default_str();
  scan->add_option("--lower", lower, "Box lower bound")->capture_default_str();
  scan->add_option("--upper", upper, "Box upper bound")->capture_default_str();
  auto* demo = app.add_subcommand("demo", "Print a built-in frame as JSON");
  std::string demo_name;
  bool list = false;
  demo->add_option("name", demo_name, "martinet, dim4, dim4-engel, dim5 or dim6-cubic");
  demo->add_flag("--list", list, "List the built-in frames");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    if (json) {
      out << Json{{"command", nullptr}, {"error", {{"kind", "usage"}, {"message", e.what()}}}}.dump(2) << "\n";
    } else {
      err << "goh: " << e.what() << "\n";
    }
    return kExitInput;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (*demo) {
      if (list) {
        for (const auto& spec : demo_frames()) out << spec.name << "\n";
        return kExitOk;
      }
      if (demo_name.empty()) throw InputError("demo needs a name (see demo --list)");
      out << demo_frame(demo_name).to_json().dump(2) << "\n";
      return kExitOk;
    }
    const Loaded f = load_frame(input, in);
    Report rep;
    if (*goh) rep = cmd_goh(f);
    if (*pfaff) rep = cmd_pfaffian(f, minors);
    if (*gens) rep = cmd_generators(f, rank);
    if (*cert) rep = cmd_certify(f, rank);
    if (*strat) rep = cmd_stratify(f, config);
    if (*sing) rep = cmd_singular_set(f, rank);
    if (*nf) rep = cmd_normalform(f, order);
    if (*integ) rep = cmd_integrate(f, field, from, horizon, step, csv);
    if (*scan) rep = cmd_scan(f, scan_field, scan_samples, seed, cutoff, lower, upper);
    if (json) {
      Json doc{{"command", command},
               {"inputs", rep.inputs},
               {"results", rep.results},
               {"calibration", calibration_json()},
               {"seed", rep.seed ? Json(*rep.seed) : Json(nullptr)}};
      out << doc.dump(2) << "\n";
    } else {
      out << rep.text;
    }
    return rep.status;
  } catch (const CertificateFailure& e) {
    print_error(e, command, json, out, err);
    return kExitCertificate;
  } catch (const Error& e) {
    print_error(e, command, json, out, err);
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    print_error(InputError(std::string("frame JSON: ") + e.what()), command, json, out, err);
    return kExitInput;
  }
}

}  // namespace goh::cli
