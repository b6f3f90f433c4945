// Copyright 2026 The kgcrawl Authors
// SPDX-License-Identifier: Apache-2.0

#include "kgcrawl/checkpoint.hpp"

#include <json.hpp>

namespace kgcrawl {

using ordered_json = nlohmann::ordered_json;

std::string expansion_to_json_line(const ExpansionRecord& rec) {
  ordered_json j;
  j["entity"] = rec.entity.text();
  j["depth"] = rec.depth;
  j["subject_realizations"] = rec.subject_realizations;
  auto rels = ordered_json::array();
  for (const auto& r : rec.relations) {
    ordered_json jr;
    jr["relation"] = r.relation.text();
    jr["realizations"] = r.realizations;
    jr["queried"] = r.queried;
    jr["vote_bound"] = r.vote_bound;
    auto cands = ordered_json::array();
    for (const auto& c : r.candidates) {
      auto prov = ordered_json::array();
      for (const auto& p : c.provenance) {
        prov.push_back(ordered_json::array({p.subject, p.relation}));
      }
      ordered_json jc;
      jc["object"] = c.object.text();
      jc["provenance"] = std::move(prov);
      jc["accepted"] = c.accepted;
      cands.push_back(std::move(jc));
    }
    jr["candidates"] = std::move(cands);
    rels.push_back(std::move(jr));
  }
  j["relations"] = std::move(rels);
  return j.dump();
}

ExpansionRecord expansion_from_json_line(const std::string& line) {
  auto j = nlohmann::json::parse(line);
  ExpansionRecord rec{EntityName(j.at("entity").get<std::string>()),
                      j.at("depth").get<int>(),
                      j.at("subject_realizations").get<std::vector<std::string>>(),
                      {}};
  for (const auto& jr : j.at("relations")) {
    RelationExpansion r{RelationName(jr.at("relation").get<std::string>()),
                        jr.at("realizations").get<std::vector<std::string>>(),
                        jr.at("queried").get<std::size_t>(),
                        jr.at("vote_bound").get<std::size_t>(),
                        {}};
    for (const auto& jc : jr.at("candidates")) {
      std::vector<Realization> prov;
      for (const auto& p : jc.at("provenance")) {
        prov.push_back({p.at(0).get<std::string>(), p.at(1).get<std::string>()});
      }
      r.candidates.push_back({EntityName(jc.at("object").get<std::string>()),
                              std::move(prov), jc.at("accepted").get<bool>()});
    }
    rec.relations.push_back(std::move(r));
  }
  return rec;
}

CrawlCheckpoint::CrawlCheckpoint(std::filesystem::path path)
    : path_(std::move(path)) {
  if (std::ifstream in(path_, std::ios::binary); in) {
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      try {
        auto rec = expansion_from_json_line(line);
        index_[rec.entity.key()] = records_.size();
        records_.push_back(std::move(rec));
      } catch (const std::exception&) {
        // torn write from an aborted run
      }
    }
  }
  if (path_.has_parent_path()) {
    std::filesystem::create_directories(path_.parent_path());
  }
  out_.open(path_, std::ios::binary | std::ios::app);
  if (!out_) throw std::runtime_error("cannot open checkpoint " + path_.string());
}

const ExpansionRecord* CrawlCheckpoint::find(std::string_view entity) const {
  auto it = index_.find(normalize(entity));
  return it == index_.end() ? nullptr : &records_[it->second];
}

void CrawlCheckpoint::append(const ExpansionRecord& rec) {
  out_ << expansion_to_json_line(rec) << '\n';
  out_.flush();
  index_[rec.entity.key()] = records_.size();
  records_.push_back(rec);
}

}  // namespace kgcrawl
