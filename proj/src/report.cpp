#include "prosmooth/report.hpp"

#include <fmt/format.h>

#include <string>
#include <vector>

namespace prosmooth {

namespace {

std::string tuple_str(const Json& arr) {
  std::string out = "(";
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (i) out += ", ";
    out += arr[i].dump();
  }
  return out + ")";
}

std::string levels_str(const Json& levels) {
  if (levels.empty()) return "none";
  // contiguous 1..m is the common case; print it as a range
  bool contiguous = true;
  for (std::size_t i = 0; i < levels.size(); ++i)
    if (levels[i].get<unsigned>() != i + 1) contiguous = false;
  if (contiguous && levels.size() > 1)
    return fmt::format("1..{}", levels.back().get<unsigned>());
  std::string out;
  for (std::size_t i = 0; i < levels.size(); ++i)
    out += (i ? "," : "") + levels[i].dump();
  return out;
}

std::string witness_lines(const Json& w, const std::string& indent) {
  return fmt::format("{}missed mod-p class: {}\n{}torsion invariant: p^{}\n",
                     indent, tuple_str(w.at("missed")), indent,
                     w.at("torsion_exponent").get<unsigned>());
}

std::string theta_str(const Json& theta) {
  std::string out;
  for (const auto& [name, val] : theta.at("values").items())
    out += fmt::format("{}{} -> {}", out.empty() ? "" : ", ", name,
                       val.get<std::uint64_t>());
  return out.empty() ? "(no generators)" : out;
}

std::string pair_lines(const Json& pair) {
  std::string gens;
  for (const auto& g : pair.at("generators"))
    gens += (gens.empty() ? "" : ", ") + g.get<std::string>();
  std::string rels;
  for (const auto& r : pair.at("relators"))
    rels += (rels.empty() ? "" : ", ") + r.get<std::string>();
  std::string out = fmt::format("pair: < {} | {} > over p = {}\n", gens, rels,
                                pair.at("p").get<std::uint64_t>());
  if (auto it = pair.find("theta"); it != pair.end())
    out += fmt::format("theta (precision {}): {}\n",
                       it->at("precision").get<unsigned>(), theta_str(*it));
  return out;
}

std::string one_line_verdict(const Json& v) {
  const std::string outcome = v.at("outcome").get<std::string>();
  if (outcome == "certified_yes")
    return fmt::format("CertifiedYes (certificate: {})",
                       v.value("certificate", std::string("none")));
  if (outcome == "certified_no")
    return fmt::format("CertifiedNo at n={}", v.at("level").get<unsigned>());
  return fmt::format("UndecidedUpTo n={} (passes at n={})",
                     v.at("level").get<unsigned>(),
                     levels_str(v.at("passed_levels")));
}

}  // namespace

std::string outcome_display(Outcome o) {
  switch (o) {
    case Outcome::certified_yes: return "CertifiedYes";
    case Outcome::certified_no: return "CertifiedNo";
    case Outcome::undecided: return "UndecidedUpTo";
  }
  throw internal_defect("unknown outcome");
}

std::string render_verdict(const Json& v, const std::string& indent) {
  std::string out = indent + one_line_verdict(v) + "\n";
  if (auto it = v.find("cocycle_witness"); it != v.end())
    out += witness_lines(*it, indent + "  ");
  if (auto it = v.find("subgroup_witness"); it != v.end()) {
    out += indent + "  failing subgroup chain:";
    for (const auto& phi : it->at("phi_chain")) out += " " + tuple_str(phi);
    out += "\n" + witness_lines(it->at("inner"), indent + "  ");
  }
  return out;
}

std::string render_text(const Json& report) {
  std::string out;
  out += fmt::format("command: {}\n", report.at("command").get<std::string>());
  if (auto it = report.find("input"); it != report.end()) {
    const Json& in = *it;
    if (in.contains("file"))
      out += fmt::format("input: file {}\n", in.at("file").get<std::string>());
    else if (in.contains("catalog")) {
      out += fmt::format("input: catalog {}", in.at("catalog").get<std::string>());
      if (in.contains("params")) {
        for (const auto& [k, val] : in.at("params").items())
          out += fmt::format(" {}={}", k, val.dump());
      }
      out += "\n";
    }
  }
  if (report.contains("p") && report.contains("n"))
    out += fmt::format("p: {}  n: {}\n", report.at("p").get<std::uint64_t>(),
                       report.at("n").get<unsigned>());
  if (auto it = report.find("pair"); it != report.end()) out += pair_lines(*it);
  if (auto it = report.find("presentation"); it != report.end())
    out += pair_lines(*it);
  if (auto it = report.find("index_bound"); it != report.end())
    out += fmt::format("index bound: {}\n", it->get<std::uint64_t>());

  if (auto it = report.find("verdict"); it != report.end())
    out += "verdict: " + render_verdict(*it);

  if (auto it = report.find("sweep"); it != report.end()) {
    const Json& summary = it->at("summary");
    const auto total = summary.at("total").get<std::size_t>();
    const auto no = summary.at("certified_no").get<std::size_t>();
    const auto yes = summary.at("certified_yes").get<std::size_t>();
    if (total > 0 && no == total)
      out += fmt::format("CertifiedNo for all {} admissible orientations\n",
                         total);
    else if (total > 0 && yes == total)
      out += fmt::format("CertifiedYes for all {} admissible orientations\n",
                         total);
    else
      out += fmt::format(
          "sweep over {} admissible orientations: {} CertifiedYes, "
          "{} CertifiedNo, {} undecided\n",
          total, yes, no, summary.at("undecided").get<std::size_t>());
    for (const auto& entry : it->at("entries")) {
      out += fmt::format("  theta {}: ", theta_str(entry.at("theta")));
      out += one_line_verdict(entry.at("verdict")) + "\n";
    }
  }

  if (auto it = report.find("subgroups"); it != report.end()) {
    if (it->is_array() && !it->empty() && (*it)[0].contains("verdict")) {
      // survey rows
      for (const auto& row : *it) {
        const Json& chain = row.at("phi_chain");
        std::string where = chain.empty() ? "whole group" : "chain";
        for (const auto& phi : chain) where += " " + tuple_str(phi);
        out += fmt::format("  [index {:>4}] {} (rank {}): {}",
                           row.at("index").get<std::uint64_t>(), where,
                           row.at("rank").get<std::size_t>(),
                           one_line_verdict(row.at("verdict")));
        out += "\n";
      }
    } else {
      for (const auto& phi : *it) out += "  phi = " + tuple_str(phi) + "\n";
    }
  }
  if (auto it = report.find("count"); it != report.end())
    out += fmt::format("count: {}\n", it->get<std::uint64_t>());

  if (auto it = report.find("rewritten"); it != report.end()) {
    out += "rewritten subgroup ";
    out += pair_lines(*it);
    if (auto e = report.find("embeddings"); e != report.end())
      for (const auto& [name, word] : e->items())
        out += fmt::format("  {} = {}\n", name, word.get<std::string>());
  }

  if (auto it = report.find("module"); it != report.end()) {
    const Json& m = *it;
    out += "relation matrix (rows = relators, columns = generators):\n";
    for (const auto& row : m.at("matrix")) out += "  " + tuple_str(row) + "\n";
    out += "diagonal invariants:";
    for (const auto& a : m.at("invariants"))
      out += fmt::format(" p^{}", a.get<unsigned>());
    out += fmt::format("\ntorsion certificate: {}\n",
                       m.at("torsion_certificate").get<bool>() ? "yes" : "no");
  }

  if (auto it = report.find("entries"); it != report.end() && it->is_array()) {
    for (const auto& id : *it) out += "  " + id.get<std::string>() + "\n";
  }
  if (auto it = report.find("note"); it != report.end())
    out += fmt::format("note: {}\n", it->get<std::string>());

  if (auto it = report.find("rows"); it != report.end()) {
    for (const auto& row : *it) {
      std::string params;
      for (const auto& [k, val] : row.at("params").items())
        params += fmt::format("{}{}={}", params.empty() ? "" : " ", k,
                              val.dump());
      out += fmt::format("  [{}] best orientation: {}", params,
                         one_line_verdict(row.at("best")));
      if (row.contains("theta_abelian_certificate"))
        out += fmt::format("; theta-abelian: {}",
                           row.at("theta_abelian_certificate").get<std::string>());
      out += fmt::format("; classification {}\n",
                         row.at("classification").get<std::string>());
    }
  }
  if (auto it = report.find("oracle"); it != report.end())
    out += fmt::format("oracle cross-check: {}\n", it->get<std::string>());
  return out;
}

}  // namespace prosmooth
