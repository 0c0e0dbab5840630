#include "corevote/io.hpp"

#include <charconv>
#include <fstream>

#include "corevote/proof/program3.hpp"

namespace corevote::io {

using nlohmann::json;

namespace {

int parse_int(std::string_view s, const char* what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InputError(std::string("malformed ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(1) << '\n';
}

json steps_to_json(const std::vector<proof::HistoryStep>& steps) {
  json out = json::array();
  for (const auto& s : steps) out.push_back({{"W", to_indices(s.committee)}, {"T", to_indices(s.deviation)}});
  return out;
}

}  // namespace

ProfileFile profile_from_json(const json& j) {
  try {
    ProfileFile file;
    file.m = j.at("m").get<int>();
    file.k = j.at("k").get<int>();
    for (const json& b : j.at("ballots")) {
      ProfileEntry e;
      e.approve = b.at("approve").get<std::vector<int>>();
      if (b.contains("weight")) e.weight = Rational::parse(b.at("weight").get<std::string>());
      if (b.contains("count")) e.count = b.at("count").get<long>();
      file.ballots.push_back(std::move(e));
    }
    return file;
  } catch (const json::exception& e) {
    throw InputError(std::string("profile file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("profile file: ") + e.what());
  }
}

json to_json(const ProfileFile& file) {
  json ballots = json::array();
  for (const ProfileEntry& e : file.ballots) {
    json b{{"approve", e.approve}};
    if (e.weight) b["weight"] = e.weight->str();
    if (e.count) b["count"] = *e.count;
    ballots.push_back(std::move(b));
  }
  return {{"m", file.m}, {"k", file.k}, {"ballots", std::move(ballots)}};
}

ProfileFile read_profile_file(const std::filesystem::path& path) { return profile_from_json(read_json(path)); }

void write_profile_file(const std::filesystem::path& path, const ProfileFile& file) { write_json(path, to_json(file)); }

ElectionInstance to_instance(const ProfileFile& file) {
  if (file.m < 1 || file.m > kMaxCandidates) throw InputError("m out of range");
  if (file.ballots.empty()) throw InputError("profile has no ballots");
  const bool weighted = file.ballots.front().weight.has_value();
  std::vector<Ballot> weights;
  std::vector<std::pair<CandidateSet, long>> counts;
  for (const ProfileEntry& e : file.ballots) {
    if (e.weight.has_value() == e.count.has_value() || e.weight.has_value() != weighted) {
      throw InputError("every ballot needs exactly one of weight/count, used consistently");
    }
    if (e.approve.empty()) throw InputError("empty approval list");
    const CandidateSet set = from_indices(e.approve, file.m);
    if (weighted) {
      weights.push_back({set, *e.weight});
    } else {
      if (*e.count <= 0) throw InputError("voter counts must be positive");
      counts.emplace_back(set, *e.count);
    }
  }
  try {
    Profile profile = weighted ? Profile::from_weights(file.m, std::move(weights)) : Profile::from_counts(file.m, counts);
    return ElectionInstance(std::move(profile), file.k);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

CandidateSet from_indices(const std::vector<int>& indices, int m) {
  CandidateSet set;
  for (int i : indices) {
    if (i < 1 || i > m) throw InputError("candidate index " + std::to_string(i) + " outside 1.." + std::to_string(m));
    if (set.contains(i - 1)) throw InputError("candidate index " + std::to_string(i) + " repeated");
    set.insert(i - 1);
  }
  return set;
}

std::vector<int> to_indices(CandidateSet set) {
  std::vector<int> out;
  for (Candidate c : set) out.push_back(c + 1);
  return out;
}

CandidateSet parse_candidates(std::string_view text, int m) {
  std::vector<int> indices;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view() : text.substr(comma + 1);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty()) throw InputError("empty candidate in list");
    const auto dash = item.find('-');
    auto strip = [](std::string_view s) {
      if (!s.empty() && (s.front() == 'c' || s.front() == 'C')) s.remove_prefix(1);
      return s;
    };
    if (dash == std::string_view::npos) {
      indices.push_back(parse_int(strip(item), "candidate"));
    } else {
      const int lo = parse_int(strip(item.substr(0, dash)), "candidate");
      const int hi = parse_int(strip(item.substr(dash + 1)), "candidate");
      if (lo > hi) throw InputError("descending candidate range");
      for (int i = lo; i <= hi; ++i) indices.push_back(i);
    }
  }
  return from_indices(indices, m);
}

std::string encode_indices(CandidateSet set) {
  std::string out;
  const std::vector<int> idx = to_indices(set);
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && idx[j + 1] == idx[j] + 1) ++j;
    if (!out.empty()) out += '.';
    out += std::to_string(idx[i]);
    if (j > i) out += '-' + std::to_string(idx[j]);
    i = j + 1;
  }
  return out;
}

proof::History CertificateFile::history() const {
  if (kind == Kind::Program3) return proof::program3_history(k, shape);
  return proof::History{m, k, steps};
}

namespace {

std::vector<mpz_class> trimmed(const lp::FarkasCertificate& certificate) {
  std::vector<mpz_class> out = certificate.multipliers;
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

}  // namespace

CertificateFile make_history_certificate(const proof::History& history, const lp::FarkasCertificate& certificate) {
  CertificateFile file;
  file.kind = CertificateFile::Kind::History;
  file.m = history.m;
  file.k = history.k;
  file.steps = history.steps;
  file.multipliers = trimmed(certificate);
  return file;
}

CertificateFile make_program3_certificate(int k, proof::DeviationShape shape, const lp::FarkasCertificate& certificate) {
  CertificateFile file;
  file.kind = CertificateFile::Kind::Program3;
  file.k = k;
  file.m = k + shape.outside();
  file.shape = shape;
  file.multipliers = trimmed(certificate);
  return file;
}

lp::LinearSystem reconstruct_system(const CertificateFile& file) {
  const proof::History h = file.history();
  if (!proof::is_potential_history(h) || h.m != file.m) throw InputError("certificate describes an invalid history");
  return proof::history_system(h);
}

lp::FarkasCertificate padded_certificate(const CertificateFile& file, const lp::LinearSystem& system) {
  if (static_cast<lp::Index>(file.multipliers.size()) > system.num_rows()) {
    throw InputError("certificate has more multipliers than the system has rows");
  }
  lp::FarkasCertificate cert{file.multipliers};
  cert.multipliers.resize(static_cast<std::size_t>(system.num_rows()), mpz_class(0));
  return cert;
}

CertificateFile certificate_from_json(const json& j) {
  try {
    CertificateFile file;
    const std::string kind = j.at("kind").get<std::string>();
    file.k = j.at("k").get<int>();
    if (kind == "history") {
      file.kind = CertificateFile::Kind::History;
      file.m = j.at("m").get<int>();
      if (file.m < 1 || file.m > kMaxCandidates) throw InputError("m out of range");
      for (const json& s : j.at("history")) {
        file.steps.push_back({from_indices(s.at("W").get<std::vector<int>>(), file.m),
                              from_indices(s.at("T").get<std::vector<int>>(), file.m)});
      }
    } else if (kind == "program3") {
      file.kind = CertificateFile::Kind::Program3;
      file.shape = {j.at("shape").at("size").get<int>(), j.at("shape").at("overlap").get<int>()};
      file.m = file.k + file.shape.outside();
      if (j.contains("m") && j.at("m").get<int>() != file.m) throw InputError("m inconsistent with the shape");
    } else {
      throw InputError("unknown certificate kind '" + kind + "'");
    }
    for (const json& v : j.at("multipliers")) {
      const std::string s = v.get<std::string>();
      mpz_class value;
      if (s.empty() || value.set_str(s, 10) != 0 || value < 0) throw InputError("malformed multiplier '" + s + "'");
      file.multipliers.push_back(value);
    }
    return file;
  } catch (const json::exception& e) {
    throw InputError(std::string("certificate file: ") + e.what());
  }
}

json to_json(const CertificateFile& file) {
  json j;
  j["m"] = file.m;
  j["k"] = file.k;
  if (file.kind == CertificateFile::Kind::History) {
    j["kind"] = "history";
    j["history"] = steps_to_json(file.steps);
  } else {
    j["kind"] = "program3";
    j["shape"] = {{"size", file.shape.size}, {"overlap", file.shape.overlap}};
  }
  json mult = json::array();
  for (const mpz_class& v : file.multipliers) mult.push_back(v.get_str());
  j["multipliers"] = std::move(mult);
  return j;
}

CertificateFile read_certificate_file(const std::filesystem::path& path) {
  return certificate_from_json(read_json(path));
}

void write_certificate_file(const std::filesystem::path& path, const CertificateFile& file) {
  write_json(path, to_json(file));
}

std::string certificate_filename(const CertificateFile& file) {
  std::string name;
  if (file.kind == CertificateFile::Kind::Program3) {
    name = "program3_k" + std::to_string(file.k) + "_size" + std::to_string(file.shape.size) + "_overlap" +
           std::to_string(file.shape.overlap);
  } else {
    name = "m" + std::to_string(file.m) + "_k" + std::to_string(file.k);
    for (const auto& s : file.steps) name += "__W" + encode_indices(s.committee) + "_T" + encode_indices(s.deviation);
  }
  return name + ".cert.json";
}

}  // namespace corevote::io
