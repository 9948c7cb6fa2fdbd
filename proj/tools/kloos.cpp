// kloos: command-line front end for the GF(3^r) Kloosterman moment toolkit.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "kloos/group_oracle.hpp"
#include "kloos/json_io.hpp"
#include "kloos/kloos.hpp"

namespace {

using kloos::BigInt;
using kloos::CosetFamily;
using kloos::json::ordered_json;

enum class Format { Text, Json, Csv };

struct Config {
  unsigned r = 1;
  std::string modulus;
  std::string format = "text";
  std::string output;
  unsigned jobs = 0;
  std::optional<int> n;
  std::string family;
  int h_max = 8;
  int j_max = 8;
  int n_max = 4;
};

/// Usage errors that survive CLI11's own validation.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  return Format::Text;
}

std::shared_ptr<const kloos::Field> build_field(const Config& c) {
  if (c.modulus.empty()) return kloos::Field::build(c.r);
  return kloos::Field::build(c.r, kloos::parse_coefficients(c.modulus));
}

CosetFamily require_family(const Config& c) {
  if (c.family.empty()) throw UsageError("--family is required (DC1+ ... DC4-)");
  return CosetFamily::parse(c.family);
}

int require_n(const Config& c, CosetFamily fam) {
  if (!c.n) throw UsageError("--n is required for " + fam.name() + " (smallest valid n is " +
                             std::to_string(fam.min_n()) + ")");
  fam.require_valid(*c.n);
  return *c.n;
}

std::string cmd_field(const Config& c, Format fmt) {
  auto f = build_field(c);
  std::ostringstream out;
  if (fmt == Format::Json) return kloos::json::field_info(*f).dump() + "\n";
  if (fmt == Format::Csv) {
    out << "element,trace,square,inverse\n";
    for (kloos::Element x : f->elements()) {
      out << '"' << f->format(x) << "\"," << int(f->trace(x)) << ',';
      if (x == kloos::Field::zero()) out << ",\n";
      else out << (f->is_square(x) ? 1 : 0) << ",\"" << f->format(f->inv(x)) << "\"\n";
    }
    return out.str();
  }
  out << "GF(" << f->order() << ") modulus " << kloos::poly::format(f->modulus()) << "\n";
  out << "generator " << f->format(f->generator()) << ", first nonsquare " << f->format(f->first_nonsquare())
      << "\n";
  return out.str();
}

std::string cmd_kloosterman(const Config& c, Format fmt) {
  auto f = build_field(c);
  kloos::KloostermanTable t(f);
  std::ostringstream out;
  if (fmt == Format::Json) {
    ordered_json j;
    j["q"] = f->order();
    j["modulus"] = kloos::json::modulus(*f);
    ordered_json k = ordered_json::object();
    for (kloos::Element a : f->nonzero_elements()) k[f->format(a)] = t(a);
    j["K"] = std::move(k);
    return j.dump() + "\n";
  }
  if (fmt == Format::Csv) out << "a,square,K\n";
  for (kloos::Element a : f->nonzero_elements()) {
    if (fmt == Format::Csv) out << '"' << f->format(a) << "\"," << (f->is_square(a) ? 1 : 0) << ',' << t(a) << "\n";
    else out << "K(" << f->format(a) << ") = " << t(a) << "\n";
  }
  return out.str();
}

std::string cmd_moments(const Config& c, Format fmt) {
  auto f = build_field(c);
  kloos::KloostermanTable t(f);
  const ordered_json j = kloos::json::kloosterman_moments(t, static_cast<unsigned>(c.h_max));
  if (fmt == Format::Json) return j.dump() + "\n";
  std::ostringstream out;
  if (fmt == Format::Csv) out << "q,h,SK,MK\n";
  for (std::size_t i = 0; i < j["h"].size(); ++i) {
    const std::string sk = kloos::json::read_big(j["SK"][i]).str();
    const std::string mk = kloos::json::read_big(j["MK"][i]).str();
    if (fmt == Format::Csv) out << f->order() << ',' << j["h"][i] << ',' << sk << ',' << mk << "\n";
    else out << "h=" << j["h"][i] << "  SK=" << sk << "  MK=" << mk << "\n";
  }
  return out.str();
}

std::string cmd_constants(const Config& c, Format fmt) {
  const BigInt q = kloos::ipow(BigInt(3), c.r);
  std::vector<ordered_json> rows;
  if (!c.family.empty()) {
    const CosetFamily fam = CosetFamily::parse(c.family);
    if (c.n) {
      rows.push_back(kloos::json::constants_row(fam, require_n(c, fam), q));
    } else {
      for (int n = fam.min_n(); n <= c.n_max; n += 2) rows.push_back(kloos::json::constants_row(fam, n, q));
    }
  } else {
    for (const CosetFamily& fam : CosetFamily::all()) {
      for (int n = fam.min_n(); n <= c.n_max; n += 2) {
        if (!c.n || *c.n == n) rows.push_back(kloos::json::constants_row(fam, n, q));
      }
    }
  }
  if (fmt == Format::Json) {
    if (rows.size() == 1) return rows.front().dump() + "\n";
    return ordered_json(rows).dump() + "\n";
  }
  std::ostringstream out;
  if (fmt == Format::Csv) out << "family,n,q,A,B,N\n";
  for (const auto& row : rows) {
    auto s = [&](const char* key) { return kloos::json::read_big(row[key]).str(); };
    if (fmt == Format::Csv) {
      out << row["family"].get<std::string>() << ',' << row["n"] << ',' << s("q") << ',' << s("A") << ',' << s("B")
          << ',' << s("N") << "\n";
    } else {
      out << row["family"].get<std::string>() << " n=" << row["n"] << " q=" << s("q") << "  A=" << s("A")
          << " B=" << s("B") << " N=" << s("N") << "\n";
    }
  }
  return out.str();
}

std::string cmd_weights(const Config& c, Format fmt) {
  const CosetFamily fam = require_family(c);
  auto f = build_field(c);
  const int n = require_n(c, fam);
  kloos::KloostermanTable t(f);
  const ordered_json j = kloos::json::code_dump(fam, n, t, c.j_max);
  if (fmt == Format::Json) return j.dump() + "\n";
  std::ostringstream out;
  if (fmt == Format::Csv) {
    out << "kind,key,value\n";
    for (const auto& [k, v] : j["profile"].items()) out << "profile,\"" << k << "\"," << kloos::json::read_big(v) << "\n";
    for (const auto& [k, v] : j["dual_weights"].items()) {
      out << "dual_weight,\"" << k << "\"," << kloos::json::read_big(v) << "\n";
    }
    for (std::size_t i = 0; i < j["C_prefix"].size(); ++i) {
      out << "C," << i << ',' << kloos::json::read_big(j["C_prefix"][i]) << "\n";
    }
    return out.str();
  }
  out << fam.name() << "(" << n << "," << f->order() << ")  N=" << kloos::json::read_big(j["N"]) << "\n";
  out << "trace profile:\n";
  for (const auto& [k, v] : j["profile"].items()) out << "  N(" << k << ") = " << kloos::json::read_big(v) << "\n";
  out << "dual weights:\n";
  for (const auto& [k, v] : j["dual_weights"].items()) {
    out << "  w(c(" << k << ")) = " << kloos::json::read_big(v) << "\n";
  }
  out << "weight distribution:\n";
  for (std::size_t i = 0; i < j["C_prefix"].size(); ++i) {
    out << "  C_" << i << " = " << kloos::json::read_big(j["C_prefix"][i]) << "\n";
  }
  return out.str();
}

std::string cmd_histogram(const Config& c, Format fmt) {
  const CosetFamily fam = require_family(c);
  auto f = build_field(c);
  const int n = require_n(c, fam);
  const kloos::GroupSet set = kloos::double_coset(f, fam, n, f->first_nonsquare());
  const kloos::TraceProfile hist = kloos::trace_histogram(set);
  const ordered_json j = kloos::json::by_element(*f, hist.counts);
  if (fmt == Format::Json) return j.dump() + "\n";
  std::ostringstream out;
  if (fmt == Format::Csv) out << "beta,count\n";
  for (const auto& [k, v] : j.items()) {
    if (fmt == Format::Csv) out << '"' << k << "\"," << v << "\n";
    else out << "N(" << k << ") = " << v << "\n";
  }
  if (fmt == Format::Text) out << "total " << set.size() << "\n";
  return out.str();
}

std::string cmd_recursion(const Config& c, Format fmt, bool& ok) {
  const CosetFamily fam = require_family(c);
  auto f = build_field(c);
  const int n = require_n(c, fam);
  kloos::KloostermanTable t(f);
  const kloos::MomentSeries solved = kloos::sk_via_pless(fam, n, t, c.h_max);
  const kloos::TabulatedAudit tabulated = kloos::sk_via_tabulated_formula(fam, n, t, c.h_max);
  std::vector<BigInt> oracle;
  std::vector<unsigned> exponents;
  for (unsigned h = 1; h <= static_cast<unsigned>(c.h_max); ++h) {
    exponents.push_back(solved.exponent(h));
    oracle.push_back(kloos::sk_moment(t, solved.exponent(h)));
  }
  ok = solved.values == oracle;

  if (fmt == Format::Json) {
    ordered_json j;
    j["family"] = fam.name();
    j["n"] = n;
    j["q"] = f->order();
    j["exponents"] = exponents;
    j["SK"] = kloos::json::big_array(solved.values);
    j["oracle"] = kloos::json::big_array(oracle);
    j["tabulated"] = kloos::json::big_array(tabulated.series.values);
    j["tabulated_discrepancies"] = tabulated.discrepancies;
    return j.dump() + "\n";
  }
  std::ostringstream out;
  if (fmt == Format::Csv) out << "q,exponent,SK,oracle,tabulated\n";
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (fmt == Format::Csv) {
      out << f->order() << ',' << exponents[i] << ',' << solved.values[i] << ',' << oracle[i] << ','
          << tabulated.series.values[i] << "\n";
    } else {
      out << "SK^" << exponents[i] << " = " << solved.values[i] << (solved.values[i] == oracle[i] ? "" : "  MISMATCH")
          << "\n";
    }
  }
  if (fmt == Format::Text) {
    for (const auto& d : tabulated.discrepancies) out << "tabulated formula: " << d << "\n";
  }
  return out.str();
}

std::string cmd_verify(const Config& c, Format fmt, bool& ok) {
  auto f = build_field(c);
  kloos::KloostermanTable t(f);
  const kloos::VerificationReport rep = kloos::full_verification(t, c.n_max, c.h_max, c.jobs);
  ok = rep.passed();
  if (fmt == Format::Json) return kloos::json::report(rep).dump() + "\n";
  std::ostringstream out;
  if (fmt == Format::Csv) {
    out << "family,n,check,status,lhs,rhs\n";
    for (const auto& g : rep.global) out << ",," << g.name << ',' << (g.passed ? "pass" : "fail") << ",,\n";
    for (const auto& inst : rep.instances) {
      for (const auto& ch : inst.checks) {
        out << inst.family.name() << ',' << inst.n << ",\"" << ch.name << "\"," << (ch.passed ? "pass" : "fail") << ','
            << ch.lhs << ',' << ch.rhs << "\n";
      }
    }
    return out.str();
  }
  out << "GF(" << rep.q << ") modulus " << kloos::poly::format(rep.modulus) << ", n <= " << rep.n_max
      << ", h <= " << rep.h_max << "\n";
  for (const auto& g : rep.global) out << (g.passed ? "pass " : "FAIL ") << g.name << " " << g.detail << "\n";
  for (const auto& inst : rep.instances) {
    std::size_t failed = 0;
    for (const auto& ch : inst.checks) failed += ch.passed ? 0 : 1;
    out << (failed ? "FAIL " : "pass ") << inst.family.name() << " n=" << inst.n << "  " << inst.checks.size() - failed
        << "/" << inst.checks.size() << " checks";
    if (!inst.tabulated_discrepancies.empty()) out << ", tabulated formula differs";
    out << "\n";
    for (const auto& ch : inst.checks) {
      if (!ch.passed) out << "     " << ch.name << ": " << ch.lhs << " != " << ch.rhs << " " << ch.detail << "\n";
    }
    for (const auto& d : inst.tabulated_discrepancies) out << "     " << d << "\n";
  }
  out << (ok ? "all checks passed" : "verification FAILED") << "\n";
  return out.str();
}

void add_field_options(CLI::App* cmd, Config& c) {
  cmd->add_option("--r", c.r, "field degree, q = 3^r")->check(CLI::Range(1u, kloos::kMaxDegree));
  cmd->add_option("--modulus", c.modulus, "irreducible modulus, coefficients constant term first (\"1,0,1\")");
}

void add_output_options(CLI::App* cmd, Config& c) {
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("--output", c.output, "write to this file instead of stdout");
}

void add_family_options(CLI::App* cmd, Config& c) {
  cmd->add_option("--family", c.family, "double-coset family DC1+ ... DC4-");
  cmd->add_option("--n", c.n, "rank parameter n")->check(CLI::Range(1, 64));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kloosterman moments over GF(3^r) via ternary codes of double cosets"};
  app.require_subcommand(1);
  Config c;

  auto* field = app.add_subcommand("field", "field parameters, generator and canonical nonsquare");
  auto* kloosterman = app.add_subcommand("kloosterman", "table of K(a) for every nonzero a");
  auto* moments = app.add_subcommand("moments", "SK^h and MK^h by direct summation");
  auto* constants = app.add_subcommand("constants", "family constants A, B, N");
  auto* weights = app.add_subcommand("weights", "trace profile, dual weights and weight distribution prefix");
  auto* histogram = app.add_subcommand("histogram", "trace histogram of a brute-forced double coset (q = 3, n <= 2)");
  auto* verify = app.add_subcommand("verify", "run every check over all valid families");
  auto* recursion = app.add_subcommand("recursion", "moments from the Pless recursion for one family");

  for (auto* cmd : {field, kloosterman, moments, constants, weights, histogram, verify, recursion}) {
    add_field_options(cmd, c);
    add_output_options(cmd, c);
    cmd->add_option("--jobs", c.jobs, "worker threads (default: KLOOS_JOBS or 1)")->check(CLI::Range(1u, 1024u));
  }
  for (auto* cmd : {constants, weights, histogram, recursion}) add_family_options(cmd, c);
  moments->add_option("--hmax", c.h_max, "largest moment order")->check(CLI::Range(1, 64));
  for (auto* cmd : {verify, recursion}) {
    cmd->add_option("--hmax", c.h_max, "largest recursion order")->check(CLI::Range(1, kloos::kMaxMomentOrder));
  }
  weights->add_option("--jmax", c.j_max, "weight distribution cutoff")->check(CLI::Range(0, kloos::kMaxPrefix));
  for (auto* cmd : {constants, verify}) cmd->add_option("--nmax", c.n_max, "largest n")->check(CLI::Range(1, 64));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  bool ok = true;
  std::string text;
  try {
    if (c.jobs == 0) c.jobs = kloos::jobs_from_env();
    const Format fmt = parse_format(c.format);
    if (*field) text = cmd_field(c, fmt);
    else if (*kloosterman) text = cmd_kloosterman(c, fmt);
    else if (*moments) text = cmd_moments(c, fmt);
    else if (*constants) text = cmd_constants(c, fmt);
    else if (*weights) text = cmd_weights(c, fmt);
    else if (*histogram) text = cmd_histogram(c, fmt);
    else if (*recursion) text = cmd_recursion(c, fmt, ok);
    else text = cmd_verify(c, fmt, ok);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const kloos::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const kloos::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const kloos::ConsistencyError& e) {
    std::cerr << "consistency failure: " << e.what() << "\n";
    return 1;
  }

  if (c.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(c.output);
    if (!file) {
      std::cerr << "error: cannot write " << c.output << "\n";
      return 2;
    }
    file << text;
  }
  return ok ? 0 : 1;
}
