#include "polext/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "polext/dynsys.hpp"
#include "polext/extender.hpp"
#include "polext/paramcurve.hpp"
#include "polext/text.hpp"

namespace polext {

namespace {

struct Token {
  std::string text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

int parse_count(const Token& t, std::size_t line, bool trailing_colon) {
  std::string digits = t.text;
  if (trailing_colon) {
    if (digits.empty() || digits.back() != ':') throw ParseError("expected ':' after the degree", line, t.column);
    digits.pop_back();
  }
  if (digits.empty() || digits.size() > 6 ||
      digits.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("expected a nonnegative integer, got '" + digits + "'", line, t.column);
  return std::stoi(digits);
}

void check_identifier(const Token& t, std::size_t line) {
  const auto ok_first = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  const auto ok_rest = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  if (t.text.empty() || !ok_first(t.text[0]) ||
      !std::all_of(t.text.begin(), t.text.end(), ok_rest))
    throw ParseError("invalid variable name '" + t.text + "'", line, t.column);
}

class FileError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string join_monomials(const std::vector<Monomial>& monos, const PolyRing& ring,
                           const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < monos.size(); ++i) {
    if (i > 0) out += sep;
    out += format_monomial(monos[i], ring);
  }
  return out;
}

std::string slug(const std::string& name) {
  std::string out = name;
  for (char& c : out)
    if (c == ' ') c = '-';
  return out;
}

// Key/value writer: "key=value" in machine mode, "key = value" otherwise.
class Writer {
public:
  Writer(std::ostream& out, bool machine) : out_(out), machine_(machine) {}

  bool machine() const { return machine_; }
  void put(const std::string& key, const std::string& value) {
    out_ << key << (machine_ ? "=" : " = ") << value << '\n';
  }
  // Human-only prose.
  void say(const std::string& line) {
    if (!machine_) out_ << line << '\n';
  }
  void check(const CheckItem& c) {
    if (machine_) {
      put("check." + slug(c.name), c.passed ? "pass" : "fail");
      put("detail." + slug(c.name), c.detail);
    } else {
      out_ << c.name << ": " << (c.passed ? "pass" : "FAIL") << " (" << c.detail << ")\n";
    }
  }

private:
  std::ostream& out_;
  bool machine_;
};

struct Options {
  std::string file;
  bool machine = false;
  std::uint64_t seed = 0;
  int max_r = 3;
  int max_retries = 64;
  std::int64_t coeff_bound = 10;
  bool allow_conjugation = false;
  int lift_r = 1;
  int degree = 2;
  std::string point;
  std::size_t max_steps = 20;
};

ExtensionConfig make_config(const Options& o) {
  ExtensionConfig c = ExtensionConfig::auto_search(o.max_r);
  c.max_retries = o.max_retries;
  c.coeff_bound = o.coeff_bound;
  c.allow_conjugation = o.allow_conjugation;
  c.seed = o.seed;
  c.check();
  return c;
}

// Run the validation checks; the built objects are set only when all pass.

struct IdealProblem {
  std::vector<CheckItem> checks;
  std::optional<PolarizedSystem> system;
};

IdealProblem check_ideal(const ProblemFile::IdealBlock& block) {
  IdealProblem out;
  std::optional<ProjectiveVariety> variety;
  try {
    variety.emplace(block.ring, block.generators);
  } catch (const UsageError& e) {
    out.checks.push_back({"variety", false, e.what()});
    return out;
  }
  out.checks.push_back({"variety", true,
                        "dimension " + std::to_string(variety->dimension()) + " in P^" +
                            std::to_string(variety->ambient_dimension())});
  ValidationReport report = validate_system(*variety, block.map_degree, block.map_forms);
  out.checks.insert(out.checks.end(), report.checks.begin(), report.checks.end());
  out.system = std::move(report.system);
  return out;
}

struct CurveProblem {
  std::vector<CheckItem> checks;
  std::optional<CurveParametrization> curve;
  std::optional<CurveSelfMap> map;
};

CurveProblem check_curve(const ProblemFile::ParamBlock& block) {
  CurveProblem out;
  try {
    out.curve.emplace(block.ambient_ring, block.forms);
    out.checks.push_back({"parametrization", true,
                          "degree " + std::to_string(out.curve->degree()) + " curve in P^" +
                              std::to_string(out.curve->ambient_dimension())});
  } catch (const UsageError& e) {
    out.checks.push_back({"parametrization", false, e.what()});
  }
  const int q = block.selfmap_degree;
  out.checks.push_back({"polarization degree", q >= 2,
                        "q = " + std::to_string(q) + (q >= 2 ? "" : ", need q >= 2")});
  std::string bad;
  for (const Polynomial& f : block.selfmap)
    if (bad.empty() && (f.is_zero() || !f.is_homogeneous(q)))
      bad = format(f) + " is not a nonzero form of degree " + std::to_string(q);
  out.checks.push_back({"map degree", bad.empty(), bad.empty() ? "P and Q of degree " + std::to_string(q) : bad});
  if (bad.empty() && q >= 2) {
    try {
      out.map.emplace(block.selfmap[0], block.selfmap[1]);
      out.checks.push_back({"base-point-free", true, "P and Q have no common zero"});
    } catch (const UsageError& e) {
      out.checks.push_back({"base-point-free", false, e.what()});
    }
  }
  const bool ok = std::all_of(out.checks.begin(), out.checks.end(), [](const CheckItem& c) { return c.passed; });
  if (!ok) {
    out.curve.reset();
    out.map.reset();
  }
  return out;
}

bool report_violations(const std::vector<CheckItem>& checks, Writer& w) {
  bool ok = true;
  for (const CheckItem& c : checks)
    if (!c.passed) {
      w.check(c);
      ok = false;
    }
  return ok;
}

std::string matrix_text(const DenseMatrix& a) {
  std::string out = "[";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i > 0) out += "; ";
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j > 0) out += " ";
      out += a(i, j).to_string();
    }
  }
  return out + "]";
}

void print_trail(const Transcript& t, Writer& w) {
  for (std::size_t i = 0; i < t.events.size(); ++i) {
    if (w.machine()) {
      w.put("trail[" + std::to_string(i) + "]", t.events[i]);
    } else {
      w.say("trail: " + t.events[i]);
    }
  }
}

int finish_extension(const ExtensionOutcome& outcome,
                     const std::function<VerificationReport(const ExtensionResult&)>& verify,
                     Writer& w) {
  if (const auto* failure = std::get_if<ExtensionFailure>(&outcome)) {
    print_trail(failure->transcript, w);
    w.put("status", "failed");
    w.put("last-r", std::to_string(failure->r));
    w.put("blocking-step", std::to_string(failure->blocking_step));
    w.put("reason", failure->reason);
    return kExitConstruction;
  }
  const ExtensionResult& result = std::get<ExtensionResult>(outcome);
  const VerificationReport verification = verify(result);
  print_trail(result.transcript(), w);
  if (!verification.ok()) {
    report_violations(verification.checks, w);
    w.put("status", "verification-failed");
    return kExitConstruction;
  }
  w.put("status", "ok");
  w.put("r", std::to_string(result.r()));
  if (result.conjugation()) {
    w.say("psi extends the iterate conjugated by the coordinate change below");
    w.put("conjugation", matrix_text(*result.conjugation()));
  }
  const std::vector<Polynomial> psi = normalize_tuple(result.psi());
  for (std::size_t i = 0; i < psi.size(); ++i)
    w.put("psi[" + std::to_string(i) + "]", format_exact(psi[i]));
  const Certificates& cert = result.certificates();
  std::string dims;
  for (std::size_t j = 0; j < cert.step_dimensions.size(); ++j)
    dims += (j > 0 ? "," : "") + std::to_string(cert.step_dimensions[j]);
  w.put("cert.compatibility", cert.compatibility ? "pass" : "fail");
  w.put("cert.step-dimensions", dims);
  w.put("cert.projective-emptiness", cert.projective_emptiness ? "pass" : "fail");
  w.put("cert.degrees", cert.degrees ? "pass" : "fail");
  std::size_t repairs = 0;
  for (const Attempt& a : result.transcript().attempts)
    if (a.index > 0) ++repairs;
  w.put("attempts", std::to_string(result.transcript().attempts.size()));
  w.put("repairs", std::to_string(repairs));
  for (const CheckItem& c : verification.checks) w.put("verify." + slug(c.name), "pass");
  return kExitOk;
}

// Subcommands. Each returns an exit code.

int cmd_validate(const ProblemFile& file, Writer& w) {
  const std::vector<CheckItem> checks =
      file.ideal_block ? check_ideal(*file.ideal_block).checks : check_curve(*file.param_block).checks;
  bool ok = true;
  for (const CheckItem& c : checks) {
    w.check(c);
    ok = ok && c.passed;
  }
  w.put("valid", ok ? "true" : "false");
  return ok ? kExitOk : kExitValidation;
}

int cmd_extend(const ProblemFile& file, const Options& o, Writer& w) {
  const ExtensionConfig config = make_config(o);
  if (file.ideal_block) {
    IdealProblem problem = check_ideal(*file.ideal_block);
    if (!report_violations(problem.checks, w)) return kExitValidation;
    const PolarizedSystem& sys = *problem.system;
    return finish_extension(
        extend(sys, config), [&](const ExtensionResult& r) { return verify_extension(sys, r); }, w);
  }
  CurveProblem problem = check_curve(*file.param_block);
  if (!report_violations(problem.checks, w)) return kExitValidation;
  const CurveParametrization& curve = *problem.curve;
  const CurveSelfMap& map = *problem.map;
  return finish_extension(
      end_to_end_extend(curve, map, config),
      [&](const ExtensionResult& r) { return verify_curve_extension(curve, map, r); }, w);
}

std::optional<CurveProblem> need_curve(const ProblemFile& file, const char* command, Writer& w,
                                       std::ostream& err) {
  if (!file.param_block) {
    err << "error: " << command << " needs a param block\n";
    return std::nullopt;
  }
  CurveProblem problem = check_curve(*file.param_block);
  if (!report_violations(problem.checks, w)) return std::nullopt;
  return problem;
}

int cmd_liftability(const ProblemFile& file, const Options& o, Writer& w, std::ostream& err) {
  if (o.lift_r < 1) throw UsageError("--r must be >= 1");
  auto problem = need_curve(file, "liftability", w, err);
  if (!problem) return kExitValidation;
  const CurveParametrization& curve = *problem->curve;
  const PolyRing& params = *curve.param_ring();
  const LiftReport report = liftability(curve, *problem->map, o.lift_r);
  const ImageBasis image = image_basis(curve, iterate_selfmap(*problem->map, o.lift_r).front().total_degree());
  const char* sep = w.machine() ? "," : ", ";
  w.put("r", std::to_string(report.r));
  w.put("degree", std::to_string(image.degree));
  w.put("image-rank", std::to_string(report.image_rank));
  w.put("image-dimension", std::to_string(image.monomials.size()));
  w.put("image", join_monomials(image.pivots, params, sep));
  w.put("missing", join_monomials(image.missing, params, sep));
  w.put("liftable", report.liftable ? "true" : "false");
  for (const Obstruction& ob : report.obstructions) {
    const std::string i = std::to_string(ob.index);
    w.put("obstruction[" + i + "]", join_monomials(ob.monomials(), params, sep));
    w.put("residual[" + i + "]", format_exact(ob.residual));
  }
  if (!report.liftable) w.put("obstructing", join_monomials(report.obstructing_monomials(), params, sep));
  for (std::size_t i = 0; i < report.lifts.size(); ++i)
    w.put("lift[" + std::to_string(i) + "]", format_exact(report.lifts[i]));
  return kExitOk;
}

int cmd_implicitize(const ProblemFile& file, Writer& w, std::ostream& err) {
  if (!file.param_block) {
    err << "error: implicitize needs a param block\n";
    return kExitValidation;
  }
  CurveParametrization curve(file.param_block->ambient_ring, file.param_block->forms);
  const std::vector<Polynomial> ideal = implicitize(curve);
  w.put("generators", std::to_string(ideal.size()));
  for (std::size_t i = 0; i < ideal.size(); ++i)
    w.put("ideal[" + std::to_string(i) + "]", format(ideal[i]));
  return kExitOk;
}

int cmd_image_basis(const ProblemFile& file, const Options& o, Writer& w, std::ostream& err) {
  if (!file.param_block) {
    err << "error: image-basis needs a param block\n";
    return kExitValidation;
  }
  if (o.degree < 1) throw UsageError("--degree must be >= 1");
  CurveParametrization curve(file.param_block->ambient_ring, file.param_block->forms);
  const ImageBasis image = image_basis(curve, o.degree);
  const PolyRing& params = *curve.param_ring();
  const char* sep = w.machine() ? "," : ", ";
  w.put("degree", std::to_string(o.degree));
  w.put("rank", std::to_string(image.rank));
  w.put("target-dimension", std::to_string(image.monomials.size()));
  w.put("image", join_monomials(image.pivots, params, sep));
  w.put("missing", join_monomials(image.missing, params, sep));
  for (std::size_t k = 0; k < image.basis.size(); ++k)
    w.put("basis[" + std::to_string(k) + "]", format_exact(image.basis[k]));
  return kExitOk;
}

int cmd_orbit(const ProblemFile& file, const Options& o, Writer& w, std::ostream& err) {
  if (!file.ideal_block) {
    err << "error: orbit needs an ideal block\n";
    return kExitValidation;
  }
  IdealProblem problem = check_ideal(*file.ideal_block);
  if (!report_violations(problem.checks, w)) return kExitValidation;
  std::vector<RationalPoint> points;
  if (!o.point.empty()) {
    points.push_back(parse_point(o.point, file.field));
  } else {
    for (const auto& [text, line] : file.points) points.push_back(parse_point(text, file.field, line));
  }
  if (points.empty()) {
    err << "error: no point given (use --point or a points block)\n";
    return kExitValidation;
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const OrbitReport report = orbit_classify(*problem.system, points[i], o.max_steps);
    const std::string idx = "[" + std::to_string(i) + "]";
    if (w.machine()) {
      w.put("point" + idx, points[i].to_string());
      w.put("preperiodic" + idx, report.preperiodic ? "true" : "false");
      if (report.preperiodic) {
        w.put("tail" + idx, std::to_string(report.tail));
        w.put("cycle" + idx, std::to_string(report.cycle));
      } else {
        w.put("steps" + idx, std::to_string(o.max_steps));
      }
    } else if (report.preperiodic) {
      w.say(points[i].to_string() + ": tail=" + std::to_string(report.tail) +
            " cycle=" + std::to_string(report.cycle));
    } else {
      w.say(points[i].to_string() + ": no repetition within " + std::to_string(o.max_steps));
    }
  }
  return kExitOk;
}

}  // namespace

ProblemFile parse_problem(std::string_view text) {
  enum class Block { none, ideal, map, param, selfmap, points };
  ProblemFile file;
  bool field_seen = false;
  RingPtr ring;
  std::optional<ProblemFile::ParamBlock> param;
  std::optional<ProblemFile::IdealBlock> ideal;
  bool map_seen = false;
  bool param_forms_seen = false;
  bool selfmap_seen = false;
  std::size_t ideal_line = 0;
  std::size_t param_line = 0;
  Block block = Block::none;
  std::size_t block_line = 0;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    const std::size_t column = first + 1;
    const std::string_view body = line.substr(first);

    if (first > 0) {
      switch (block) {
        case Block::none:
          throw ParseError("indented line outside a block", line_no, column);
        case Block::ideal:
          ideal->generators.push_back(
              parse_polynomial(body, ideal->ring, MonomialOrder::grevlex(), line_no, column));
          break;
        case Block::map:
          ideal->map_forms.push_back(
              parse_polynomial(body, ideal->ring, MonomialOrder::grevlex(), line_no, column));
          break;
        case Block::param:
          param->forms.push_back(
              parse_polynomial(body, param->param_ring, MonomialOrder::grevlex(), line_no, column));
          break;
        case Block::selfmap:
          if (param->selfmap.size() == 2)
            throw ParseError("selfmap takes exactly two forms (P then Q)", line_no, column);
          param->selfmap.push_back(
              parse_polynomial(body, param->param_ring, MonomialOrder::grevlex(), line_no, column));
          break;
        case Block::points: {
          std::string entry(body);
          entry.erase(entry.find_last_not_of(" \t") + 1);
          file.points.emplace_back(entry, line_no);
          break;
        }
      }
      if (end == text.size()) break;
      continue;
    }

    if (block == Block::selfmap && param->selfmap.size() != 2)
      throw ParseError("selfmap takes exactly two forms (P then Q)", block_line, 1);
    block = Block::none;
    const std::vector<Token> tokens = tokenize(body);
    const std::string& head = tokens[0].text;
    auto need_field = [&] {
      if (!field_seen) throw ParseError("field must be declared first", line_no, column);
    };
    auto expect_tokens = [&](std::size_t n) {
      if (tokens.size() != n)
        throw ParseError("malformed '" + head + "' declaration", line_no,
                         tokens.size() > n ? tokens[n].column : column + body.size());
    };

    if (head == "field") {
      if (field_seen) throw ParseError("field declared twice", line_no, column);
      if (tokens.size() == 2 && tokens[1].text == "rational") {
        file.field = FieldSpec::rationals();
      } else if (tokens.size() == 3 && tokens[1].text == "prime") {
        const Token& p = tokens[2];
        if (p.text.empty() || p.text.size() > 19 || p.text.find_first_not_of("0123456789") != std::string::npos)
          throw ParseError("expected a prime, got '" + p.text + "'", line_no, p.column);
        try {
          // A declared prime is an explicit choice and overrides the default
          // floor; every success is certified regardless of the field size.
          file.field = FieldSpec::prime(std::stoull(p.text), 1);
        } catch (const UsageError& e) {
          throw ParseError(e.what(), line_no, p.column);
        }
      } else {
        throw ParseError("expected 'field rational' or 'field prime P'", line_no, column);
      }
      field_seen = true;
    } else if (head == "ring") {
      need_field();
      if (ring) throw ParseError("ring declared twice", line_no, column);
      if (tokens.size() < 2) throw ParseError("ring needs at least one variable", line_no, column);
      std::vector<std::string> names;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        check_identifier(tokens[i], line_no);
        if (std::find(names.begin(), names.end(), tokens[i].text) != names.end())
          throw ParseError("duplicate variable '" + tokens[i].text + "'", line_no, tokens[i].column);
        names.push_back(tokens[i].text);
      }
      ring = PolyRing::make(std::move(names), file.field);
    } else if (head == "ideal:") {
      expect_tokens(1);
      if (!ring) throw ParseError("ring must be declared before ideal", line_no, column);
      if (ideal) throw ParseError("ideal declared twice", line_no, column);
      ideal.emplace();
      ideal->ring = ring;
      ideal_line = line_no;
      block = Block::ideal;
    } else if (head == "map") {
      expect_tokens(3);
      if (tokens[1].text != "degree") throw ParseError("expected 'map degree Q:'", line_no, tokens[1].column);
      if (!ideal) throw ParseError("ideal must be declared before map", line_no, column);
      if (map_seen) throw ParseError("map declared twice", line_no, column);
      ideal->map_degree = parse_count(tokens[2], line_no, true);
      map_seen = true;
      block = Block::map;
    } else if (head == "param" && tokens.size() >= 2 && tokens[1].text == "ring") {
      need_field();
      if (param) throw ParseError("param ring declared twice", line_no, column);
      if (tokens.size() != 4) throw ParseError("param ring takes exactly two variables", line_no, column);
      for (std::size_t i = 2; i < 4; ++i) check_identifier(tokens[i], line_no);
      if (tokens[2].text == tokens[3].text)
        throw ParseError("duplicate variable '" + tokens[3].text + "'", line_no, tokens[3].column);
      param.emplace();
      param->param_ring = PolyRing::make({tokens[2].text, tokens[3].text}, file.field);
      param_line = line_no;
    } else if (head == "ambient") {
      expect_tokens(2);
      if (!param) throw ParseError("param ring must be declared before ambient", line_no, column);
      if (param->ambient_ring) throw ParseError("ambient declared twice", line_no, column);
      const int m = parse_count(tokens[1], line_no, false);
      if (m < 1 || m > 15) throw ParseError("ambient dimension must be between 1 and 15", line_no, tokens[1].column);
      param->ambient_ring = make_ambient_ring(static_cast<std::size_t>(m), file.field);
      for (const std::string& v : param->param_ring->variables())
        if (param->ambient_ring->index_of(v))
          throw ParseError("parameter '" + v + "' clashes with a coordinate name", line_no, column);
    } else if (head == "param:") {
      expect_tokens(1);
      if (!param || !param->ambient_ring)
        throw ParseError("param ring and ambient must be declared before param", line_no, column);
      if (param_forms_seen) throw ParseError("param declared twice", line_no, column);
      param_forms_seen = true;
      block = Block::param;
    } else if (head == "selfmap") {
      expect_tokens(3);
      if (tokens[1].text != "degree") throw ParseError("expected 'selfmap degree Q:'", line_no, tokens[1].column);
      if (!param) throw ParseError("param ring must be declared before selfmap", line_no, column);
      if (selfmap_seen) throw ParseError("selfmap declared twice", line_no, column);
      param->selfmap_degree = parse_count(tokens[2], line_no, true);
      selfmap_seen = true;
      block = Block::selfmap;
    } else if (head == "points:") {
      expect_tokens(1);
      block = Block::points;
    } else {
      throw ParseError("unknown declaration '" + head + "'", line_no, column);
    }
    block_line = line_no;
    if (end == text.size()) break;
  }
  if (block == Block::selfmap && param->selfmap.size() != 2)
    throw ParseError("selfmap takes exactly two forms (P then Q)", block_line, 1);

  if (ideal && param)
    throw ParseError("a file holds either an ideal block or a param block, not both",
                     std::max(ideal_line, param_line), 1);
  if (ideal) {
    if (ideal->generators.empty()) throw ParseError("ideal block is empty", ideal_line, 1);
    if (!map_seen) throw ParseError("ideal block needs a 'map degree Q:' block", ideal_line, 1);
    file.ideal_block = std::move(ideal);
  } else if (param) {
    if (!param->ambient_ring) throw ParseError("param ring needs an 'ambient M' line", param_line, 1);
    if (!param_forms_seen || param->forms.empty()) throw ParseError("missing 'param:' block", param_line, 1);
    if (!selfmap_seen) throw ParseError("missing 'selfmap degree Q:' block", param_line, 1);
    file.param_block = std::move(param);
  } else {
    throw ParseError("file declares neither an ideal block nor a param block", line_no, 1);
  }
  return file;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extend polarized self-maps of projective varieties to projective space"};
  app.name("polext");
  app.require_subcommand(1);
  Options o;
  app.add_flag("--machine", o.machine, "Emit key=value lines");

  auto add_file = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "Problem file")->required();
    sub->fallthrough();
  };
  CLI::App* validate = app.add_subcommand("validate", "Check the system or curve data");
  add_file(validate);
  CLI::App* ext = app.add_subcommand("extend", "Build and certify an extension psi");
  add_file(ext);
  ext->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  ext->add_option("--max-r", o.max_r, "Largest iterate to try")->capture_default_str();
  ext->add_option("--max-retries", o.max_retries, "Repairs per step")->capture_default_str();
  ext->add_option("--coeff-bound", o.coeff_bound, "Initial sampling bound")->capture_default_str();
  ext->add_flag("--allow-conjugation", o.allow_conjugation, "Retry in random coordinates when repairs stall");
  CLI::App* lift = app.add_subcommand("liftability", "Decide whether the r-th iterate lifts");
  add_file(lift);
  lift->add_option("--r", o.lift_r, "Iterate")->capture_default_str();
  CLI::App* impl = app.add_subcommand("implicitize", "Equations of the parametrized curve");
  add_file(impl);
  CLI::App* image = app.add_subcommand("image-basis", "Image of the degree-d restriction map");
  add_file(image);
  image->add_option("--degree", o.degree, "Degree d")->required();
  CLI::App* orbit = app.add_subcommand("orbit", "Preperiodicity of rational points");
  add_file(orbit);
  orbit->add_option("--point", o.point, "Point a:b:c (default: the file's points block)");
  orbit->add_option("--max-steps", o.max_steps, "Iteration budget")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  Writer w(out, o.machine);
  try {
    const ProblemFile file = parse_problem(read_file(o.file));
    if (validate->parsed()) return cmd_validate(file, w);
    if (ext->parsed()) return cmd_extend(file, o, w);
    if (lift->parsed()) return cmd_liftability(file, o, w, err);
    if (impl->parsed()) return cmd_implicitize(file, w, err);
    if (image->parsed()) return cmd_image_basis(file, o, w, err);
    if (orbit->parsed()) return cmd_orbit(file, o, w, err);
  } catch (const ParseError& e) {
    err << o.file << ":" << e.what() << '\n';
    return kExitParse;
  } catch (const FileError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const IndeterminacyError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace polext
