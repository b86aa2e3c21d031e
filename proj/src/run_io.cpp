// Copyright 2026 The dioexp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dioexp/run_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace dioexp {

namespace {

using Json = nlohmann::ordered_json;

Json RatList(const std::vector<Rat>& values) {
  Json out = Json::array();
  for (const Rat& v : values) out.push_back(ToString(v));
  return out;
}

Json IntList(const std::vector<Int>& values) {
  Json out = Json::array();
  for (const Int& v : values) out.push_back(v.get_str());
  return out;
}

Json TripleJson(const IntegerTriple& t) {
  return Json::array({t.x().get_str(), t.y().get_str(), t.z().get_str()});
}

std::vector<Rat> ReadRats(const Json& j) {
  std::vector<Rat> out;
  for (const auto& v : j) out.push_back(ParseRational(v.get<std::string>()));
  return out;
}

std::vector<Int> ReadInts(const Json& j) {
  std::vector<Int> out;
  for (const auto& v : j) out.push_back(ParseInteger(v.get<std::string>()));
  return out;
}

Vec3 ReadTriple(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorCode::kBadInput, "triple needs 3 entries");
  return {ParseInteger(j[0].get<std::string>()), ParseInteger(j[1].get<std::string>()),
          ParseInteger(j[2].get<std::string>())};
}

Provenance ParseProvenance(const std::string& name) {
  for (Provenance p : {Provenance::kLiteral, Provenance::kAlgebraic,
                       Provenance::kContinuedFraction, Provenance::kConstructedRun}) {
    if (name == ProvenanceName(p)) return p;
  }
  throw Error(ErrorCode::kBadInput, "unknown provenance '" + name + "'");
}

}  // namespace

std::string RunToJson(const ConstructionRun& run) {
  Json doc;
  doc["schema"] = kRunSchema;
  const ConstructionParams& p = run.params;
  doc["params"] = {{"mode", ModeName(p.mode)},
                   {"w", ToString(p.w)},
                   {"tau0", ToString(p.tau0)},
                   {"tau1", ToString(p.tau1)},
                   {"sigma", ToString(p.sigma)},
                   {"v_prime", p.v_prime.ToString()}};
  doc["h1"] = run.h1.get_str();
  doc["depth"] = run.depth;
  doc["first_level"] = run.schedule.first_level;
  Json levels = Json::array();
  for (const ConstructionLevel& lv : run.levels) {
    Json l;
    l["level"] = lv.targets.level;
    l["n"] = lv.targets.n;
    l["tau"] = RatList(lv.schedule.tau);
    l["sigma"] = RatList(lv.schedule.sigma);
    l["h_n"] = lv.targets.h_n.get_str();
    l["h_next"] = lv.targets.h_next.get_str();
    l["h"] = IntList(lv.targets.h);
    l["q"] = IntList(lv.targets.q);
    Json lines = Json::array();
    for (const auto& ln : lv.lines) lines.push_back(TripleJson(ln.coords));
    Json points = Json::array();
    for (const auto& pt : lv.points) points.push_back(TripleJson(pt.coords));
    l["lines"] = lines;
    l["points"] = points;
    levels.push_back(l);
  }
  doc["levels"] = levels;
  Json certs = Json::array();
  for (const Certificate& c : run.certificates) {
    certs.push_back({{"name", c.name},
                     {"index", c.index},
                     {"lhs", ToString(c.lhs)},
                     {"rhs", ToString(c.rhs)},
                     {"relation", c.relation},
                     {"holds", c.holds},
                     {"hard", c.hard}});
  }
  doc["certificates"] = certs;
  doc["target"] = {{"alpha", ToString(run.target.alpha)},
                   {"beta", ToString(run.target.beta)},
                   {"radius", ToString(run.target.radius)},
                   {"provenance", ProvenanceName(run.target.provenance)},
                   {"label", run.target.label}};
  doc["predicted"] = {{"v", run.predicted.v.ToString()},
                      {"v_prime", run.predicted.v_prime.ToString()},
                      {"w", run.predicted.w.ToString()},
                      {"w_prime", run.predicted.w_prime.ToString()}};
  return doc.dump(2) + "\n";
}

ConstructionRun RunFromJson(const std::string& text) {
  ConstructionRun run;
  try {
    Json doc = Json::parse(text);
    if (doc.value("schema", std::string()) != kRunSchema) {
      throw Error(ErrorCode::kBadInput, "not a " + std::string(kRunSchema) + " document");
    }
    const Json& p = doc.at("params");
    run.params.mode = ParseMode(p.at("mode").get<std::string>());
    run.params.w = ParseRational(p.at("w").get<std::string>());
    run.params.tau0 = ParseRational(p.at("tau0").get<std::string>());
    run.params.tau1 = ParseRational(p.at("tau1").get<std::string>());
    run.params.sigma = ParseRational(p.at("sigma").get<std::string>());
    run.params.v_prime = ExtendedReal::Parse(p.at("v_prime").get<std::string>());
    run.schedule.params = run.params;
    run.schedule.first_level = doc.at("first_level").get<int>();
    run.h1 = ParseInteger(doc.at("h1").get<std::string>());
    run.depth = doc.at("depth").get<int>();
    for (const Json& l : doc.at("levels")) {
      ConstructionLevel lv;
      lv.targets.level = l.at("level").get<int>();
      lv.targets.n = l.at("n").get<int>();
      lv.schedule.n = lv.targets.n;
      lv.schedule.tau = ReadRats(l.at("tau"));
      lv.schedule.sigma = ReadRats(l.at("sigma"));
      lv.targets.h_n = ParseInteger(l.at("h_n").get<std::string>());
      lv.targets.h_next = ParseInteger(l.at("h_next").get<std::string>());
      lv.targets.h = ReadInts(l.at("h"));
      lv.targets.q = ReadInts(l.at("q"));
      for (const Json& t : l.at("lines")) lv.lines.push_back(LineOf(ReadTriple(t)));
      for (const Json& t : l.at("points")) lv.points.push_back(PointOf(ReadTriple(t)));
      if (lv.lines.empty() || lv.points.empty()) {
        throw Error(ErrorCode::kBadInput, "level without triples");
      }
      run.levels.push_back(std::move(lv));
    }
    if (run.levels.empty() || static_cast<int>(run.levels.size()) != run.depth) {
      throw Error(ErrorCode::kBadInput, "level count does not match depth");
    }
    if (run.params.mode == Mode::kFinite) run.schedule.fixed = run.levels.front().schedule;
    for (const Json& c : doc.at("certificates")) {
      run.certificates.push_back({c.at("name").get<std::string>(),
                                  c.at("index").get<std::string>(),
                                  ParseRational(c.at("lhs").get<std::string>()),
                                  ParseRational(c.at("rhs").get<std::string>()),
                                  c.at("relation").get<std::string>(), c.at("holds").get<bool>(),
                                  c.at("hard").get<bool>()});
    }
    const Json& t = doc.at("target");
    run.target.alpha = ParseRational(t.at("alpha").get<std::string>());
    run.target.beta = ParseRational(t.at("beta").get<std::string>());
    run.target.radius = ParseRational(t.at("radius").get<std::string>());
    run.target.provenance = ParseProvenance(t.at("provenance").get<std::string>());
    run.target.label = t.at("label").get<std::string>();
    const Json& pr = doc.at("predicted");
    run.predicted = {ExtendedReal::Parse(pr.at("v").get<std::string>()),
                     ExtendedReal::Parse(pr.at("v_prime").get<std::string>()),
                     ExtendedReal::Parse(pr.at("w").get<std::string>()),
                     ExtendedReal::Parse(pr.at("w_prime").get<std::string>())};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kBadInput, std::string("malformed run file: ") + e.what());
  }
  return run;
}

void WriteRunFile(const std::string& path, const ConstructionRun& run) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kBadInput, "cannot write '" + path + "'");
  out << RunToJson(run);
}

ConstructionRun ReadRunFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kBadInput, "cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return RunFromJson(buffer.str());
}

}  // namespace dioexp
