#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "corevote/candidate_set.hpp"
#include "corevote/lp/linear_system.hpp"
#include "corevote/profile.hpp"
#include "corevote/proof/history.hpp"
#include "corevote/proof/shapes.hpp"

namespace corevote::io {

/// Malformed input file or argument.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One ballot line: 1-based approvals with either an exact weight or a
/// voter count.
struct ProfileEntry {
  std::vector<int> approve;
  std::optional<Rational> weight;
  std::optional<long> count;

  friend bool operator==(const ProfileEntry&, const ProfileEntry&) = default;
};

struct ProfileFile {
  int m = 0;
  int k = 0;
  std::vector<ProfileEntry> ballots;

  friend bool operator==(const ProfileFile&, const ProfileFile&) = default;
};

ProfileFile profile_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ProfileFile& file);
ProfileFile read_profile_file(const std::filesystem::path& path);
void write_profile_file(const std::filesystem::path& path, const ProfileFile& file);

/// Validates the file and builds the election. Throws InputError.
ElectionInstance to_instance(const ProfileFile& file);

/// Parses "1,2,5-10" or "c1,c2,c5" (1-based) into a set over m candidates.
CandidateSet parse_candidates(std::string_view text, int m);
std::vector<int> to_indices(CandidateSet set);
CandidateSet from_indices(const std::vector<int>& indices, int m);

/// Compact sorted index list with ranges, e.g. "1-11.14.15".
std::string encode_indices(CandidateSet set);

/// Infeasibility witness for either a history system or a program-(3)
/// shape. Multipliers follow the canonical row order with trailing zeros
/// (the nonnegativity rows) left out.
struct CertificateFile {
  enum class Kind { History, Program3 };

  Kind kind = Kind::History;
  int m = 0;
  int k = 0;
  std::vector<proof::HistoryStep> steps;
  proof::DeviationShape shape;
  std::vector<mpz_class> multipliers;

  proof::History history() const;
  friend bool operator==(const CertificateFile&, const CertificateFile&) = default;
};

CertificateFile make_history_certificate(const proof::History& history, const lp::FarkasCertificate& certificate);
CertificateFile make_program3_certificate(int k, proof::DeviationShape shape, const lp::FarkasCertificate& certificate);

/// Rebuilds the linear system bit-exactly from the file's description.
lp::LinearSystem reconstruct_system(const CertificateFile& file);
/// Multipliers padded with zeros to the system's row count. Throws
/// InputError if there are more multipliers than rows.
lp::FarkasCertificate padded_certificate(const CertificateFile& file, const lp::LinearSystem& system);

CertificateFile certificate_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CertificateFile& file);
CertificateFile read_certificate_file(const std::filesystem::path& path);
void write_certificate_file(const std::filesystem::path& path, const CertificateFile& file);

/// Deterministic file name, e.g. "m15_k13__W1-13_T1.14.15.cert.json".
std::string certificate_filename(const CertificateFile& file);

}  // namespace corevote::io
