#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "tori/error.hpp"
#include "tori/torus.hpp"

namespace tori::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "tori-report/1";
inline constexpr const char* kVersion = "1.0.0";

struct Settings {
  int precision_bits = 128;
  int a_max = 10000;
  int c_max = 100;
};

// Building blocks. Integers that fit in 64 bits are JSON numbers, larger ones
// decimal strings; rationals are "p/q" strings; intervals carry exact endpoints
// and a "center ± radius" rendering.
Json integer(const mpz_class& z);
Json rational(const mpq_class& q);
Json interval(const RealInterval& r);
Json polynomial(const IntPoly& p);
Json matrix(const IntMatrix& m);
Json classification(const SpecialClassification& c);
Json galois(const GaloisReport& g);
Json triple_info(const TripleInfo& t);
Json picard(const TorusModel& m, const PicardReport& r);
Json fibration(const FibrationReport& f);
Json degrees(const DegreeReport& d);
Json salem(const SalemCertificate& s);
Json error(const Error& e);

/// Document skeleton with schema, version, command, input and settings.
Json document(const std::string& command, const Json& input, const Settings& s);

// One function per subcommand. Each returns a complete document; failures are
// recorded as an "error" member instead of being thrown.
Json run_classify(const std::string& poly, const Settings& s);
Json run_galois(const std::string& poly, const Settings& s);
/// triple is 1-based "i,j,k"; empty means the default triple 1,3,4.
Json run_picard(const std::string& poly, const std::string& triple, bool all_triples, const Settings& s);
/// Accepts a polynomial (acted on by its companion matrix) or a matrix with ';' row separators.
Json run_fibration(const std::string& poly_or_matrix, const Settings& s);
Json run_degrees(const std::string& matrix, int dim, const Settings& s);
Json run_salem_gen(int two_k, const Settings& s);
Json run_sweep(int bound, const Settings& s);
Json run_verify_paper(const Settings& s);

/// 0 without an error member, 1 for VerificationFailed, 3 for internal
/// failures, 2 for everything else (input errors).
int exit_code(const Json& doc);
int exit_code_for(Errc e);

/// Indented key/value rendering for --format text.
std::string render_text(const Json& doc);

}  // namespace tori::report
