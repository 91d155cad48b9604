// Copyright 2026 The Zoo Authors
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

#include "zoo/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "zoo/canon.hpp"
#include "zoo/cid.hpp"
#include "zoo/codec.hpp"
#include "zoo/error.hpp"
#include "zoo/fixtures.hpp"
#include "zoo/graphprops.hpp"
#include "zoo/repo.hpp"
#include "zoo/service.hpp"
#include "zoo/store.hpp"

namespace zoo::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {


struct Globals {
  std::string store;
  std::string specs;
  std::string actor;
};

std::string env_or(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : fallback;
}

fs::path specs_dir(const Globals& g) {
  if (!g.specs.empty()) return g.specs;
  return fs::path(g.store).parent_path() / "specs";
}

schema::ClassRegistry load_registry(const Globals& g) {
  return schema::ClassRegistry::load(specs_dir(g));
}

store::Store load_store(const Globals& g) {
  return store::Store::build(g.store, load_registry(g));
}

// Graph texts from the arguments, or one per non-blank stdin line.
std::vector<std::string> graph_inputs(const std::vector<std::string>& args, std::istream& in) {
  if (!args.empty()) return args;
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::vector<std::string> file_lines(const std::vector<std::string>& files, std::istream& in) {
  if (files.empty() || (files.size() == 1 && files[0] == "-")) return graph_inputs({}, in);
  std::vector<std::string> out;
  for (const auto& f : files) {
    std::ifstream file(f);
    if (!file) throw Error("cannot open " + f);
    auto lines = graph_inputs({}, file);
    out.insert(out.end(), lines.begin(), lines.end());
  }
  return out;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  repo::write_file_atomic(path, text);
}

int cmd_canon(const std::vector<std::string>& graphs, const std::string& format, bool with_guid,
              std::istream& in, std::ostream& out) {
  const auto fmt = format == "graph6" ? codec::Format::kGraph6 : codec::Format::kSparse6;
  for (const auto& text : graph_inputs(graphs, in)) {
    const auto g = codec::decode(text);
    out << canonical_bytes(g, fmt);
    if (with_guid) out << ' ' << guid(g).to_string();
    out << '\n';
  }
  return kExitOk;
}

int cmd_cid(const std::string& arg, std::size_t length, std::ostream& out) {
  if (cid::looks_like_cid(arg)) {
    out << cid::parse_cid(arg).render() << '\n';
    return kExitOk;
  }
  auto hex = arg;
  if (auto colon = hex.find(':'); colon != std::string::npos) hex = hex.substr(colon + 1);
  out << cid::cid_from_guid(hex, length).render() << '\n';
  return kExitOk;
}

int cmd_props(const std::vector<std::string>& graphs, bool certificate, std::istream& in,
              std::ostream& out) {
  for (const auto& text : graph_inputs(graphs, in)) {
    const auto g = codec::decode(text);
    json j = to_json(props::compute_all_invariants(g));
    j["guid"] = guid(g).to_string();
    j["canonical"] = canonical_bytes(g);
    if (certificate) {
      if (connected_components(g) > 1) {
        j["partial_cube_embedding"] = nullptr;
      } else if (auto e = props::partial_cube_embedding(g)) {
        j["partial_cube_embedding"] = {{"dim", e->dim}, {"labels", e->labels}};
      } else {
        j["partial_cube_embedding"] = nullptr;
      }
    }
    out << j.dump() << '\n';
  }
  return kExitOk;
}

int cmd_validate(const Globals& g, std::ostream& out, std::ostream& err) {
  const auto reg = load_registry(g);
  const auto scanned = repo::scan(g.store);
  std::size_t issues = 0;
  for (const auto& p : scanned.problems) {
    err << p << '\n';
    ++issues;
  }
  for (const auto& obj : scanned.objects) {
    for (const auto& i : schema::validate_record(reg, obj.record)) {
      err << obj.path.string() << ": " << i.message << '\n';
      ++issues;
    }
  }
  std::size_t datasets = 0;
  for (const auto& id : repo::list_datasets(g.store)) {
    try {
      repo::load_dataset(g.store, id);
      ++datasets;
    } catch (const Error& e) {
      err << e.what() << '\n';
      ++issues;
    }
  }
  if (issues) {
    err << issues << " issue(s)\n";
    return kExitDomainError;
  }
  out << "ok: " << scanned.objects.size() << " objects, " << scanned.links.size() << " links, "
      << datasets << " datasets\n";
  return kExitOk;
}

struct IngestOptions {
  std::vector<std::string> files;
  std::string collection;
  std::string index_field;
  std::vector<std::string> aliases;
};

int cmd_ingest(const Globals& g, const IngestOptions& opt, std::istream& in, std::ostream& out) {
  auto s = load_store(g);
  const auto& reg = s.registry();
  std::map<std::size_t, std::int64_t> per_order;
  std::size_t added = 0;
  std::size_t existing = 0;
  std::size_t changes = 0;
  for (const auto& line : file_lines(opt.files, in)) {
    const auto graph = codec::decode(line);
    auto rec = fixtures::record_for_graph(graph, reg);
    rec.aliases.insert(opt.aliases.begin(), opt.aliases.end());
    const auto id = rec.primary_guid().to_string();
    std::optional<IndexTuple> index;
    if (!opt.index_field.empty()) {
      index = IndexTuple{static_cast<std::int64_t>(graph.order()), ++per_order[graph.order()]};
    }
    if (s.resolve(id)) {
      ++existing;
    } else {
      if (index) {
        // File the index under the claimed class that declares the field.
        bool stored = false;
        for (auto& [cls, bag] : rec.classes) {
          if (reg.get(cls).fields.count(opt.index_field)) {
            bag[opt.index_field] = *index;
            stored = true;
          }
        }
        if (!stored) {
          throw Error("graph " + line + " has no class declaring " + opt.index_field);
        }
      }
      changes += s.apply(store::AddObject{rec}, g.actor);
      ++added;
    }
    if (!opt.collection.empty()) {
      changes += s.apply(store::AddCollection{id, opt.collection, index}, g.actor);
    }
  }
  s.save(g.store);
  out << "ingested " << added << " new, " << existing << " existing, " << changes
      << " journal entries\n";
  return kExitOk;
}

struct QueryOptions {
  std::string type = "graph";
  std::string q;
  std::vector<std::string> orderby;
  std::vector<std::string> groupby;
  std::vector<std::string> collections;
  std::optional<std::size_t> limit;
  std::size_t offset = 0;
  std::string format = "json";
  bool count = false;
  bool one = false;
};

int cmd_query(const Globals& g, const QueryOptions& opt, std::ostream& out) {
  const auto s = load_store(g);
  auto q = s.prepare(opt.type, opt.q, opt.orderby, opt.limit, opt.offset, opt.collections);
  if (opt.count) {
    const auto keys = s.prepare_keys(q.type, opt.groupby);
    out << service::count_json(s.count(q, keys), !keys.empty()).dump() << '\n';
    return kExitOk;
  }
  if (opt.one) q.limit = 1;
  const auto items = s.find_all(q);
  switch (service::parse_format(opt.format)) {
    case service::Format::kSparse6Lines:
      out << service::render_sparse6_lines(items);
      break;
    case service::Format::kCsv:
      out << service::render_csv(s, q.type, items);
      break;
    case service::Format::kJson:
      for (const auto& rec : items) out << service::item_json(s, rec).dump() << '\n';
      break;
  }
  return kExitOk;
}

int cmd_export(const Globals& g, const std::string& output, bool clear, std::ostream& out) {
  auto s = load_store(g);
  write_text(output, stable_dump(s.export_changes()), out);
  if (clear) {
    s.clear_journal();
    s.save(g.store);
  }
  return kExitOk;
}

int cmd_apply(const Globals& g, const std::string& file, std::istream& in, std::ostream& out) {
  std::string text;
  if (file == "-") {
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else {
    text = repo::read_file(file);
  }
  json contribution;
  try {
    contribution = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("malformed contribution: ") + e.what());
  }
  auto s = load_store(g);
  const auto applied = s.apply_contribution(contribution);
  s.save(g.store);
  out << "applied " << applied << " of " << contribution["journal"].size() << " entries\n";
  return kExitOk;
}

int cmd_set(const Globals& g, const std::vector<std::string>& a, std::ostream& out) {
  json value;
  try {
    value = json::parse(a[3]);
  } catch (const json::exception&) {
    value = a[3];  // bare words are strings
  }
  auto s = load_store(g);
  const bool changed =
      s.apply(store::SetProperty{a[0], a[1], a[2], value_from_json(value)}, g.actor);
  s.save(g.store);
  out << (changed ? "changed\n" : "unchanged\n");
  return kExitOk;
}

int cmd_add_collection(const Globals& g, const std::string& id, const std::string& collection,
                       const std::vector<std::int64_t>& index, std::ostream& out) {
  auto s = load_store(g);
  std::optional<IndexTuple> idx;
  if (!index.empty()) idx = IndexTuple(index.begin(), index.end());
  const bool changed = s.apply(store::AddCollection{id, collection, idx}, g.actor);
  s.save(g.store);
  out << (changed ? "changed\n" : "unchanged\n");
  return kExitOk;
}

int cmd_serve(const Globals& g, const std::string& host, int port, std::ostream& err) {
  service::Service svc(std::make_shared<const store::Store>(load_store(g)));
  err << "serving " << g.store << " on http://" << host << ":" << port << "\n";
  err.flush();
  service::serve(svc, host, port);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Fingerprint database for graphs", "zoo"};
  app.require_subcommand(1);
  Globals g;
  g.store = env_or("ZOO_STORE", "data/repo");
  g.specs = env_or("ZOO_SPECS", "");
  g.actor = env_or("ZOO_ACTOR", env_or("USER", "anonymous"));
  app.add_option("--store", g.store, "Repository root (env ZOO_STORE)");
  app.add_option("--specs", g.specs, "Class specification directory (env ZOO_SPECS)");
  app.add_option("--actor", g.actor, "Name recorded in the change journal (env ZOO_ACTOR)");

  std::vector<std::string> graphs;
  std::string canon_format = "sparse6";
  bool with_guid = false;
  auto* canon = app.add_subcommand("canon", "Print canonical encodings of graph6/sparse6 input");
  canon->add_option("graphs", graphs, "Graphs (default: one per stdin line)");
  canon->add_option("--format", canon_format)->check(CLI::IsMember({"sparse6", "graph6"}));
  canon->add_flag("--guid", with_guid, "Also print the GUID");

  std::string cid_arg;
  std::size_t cid_length = cid::kMinPrefix;
  auto* cid_cmd = app.add_subcommand("cid", "Render a GUID as a CID, or verify a CID");
  cid_cmd->add_option("id", cid_arg, "64-hex GUID or CID")->required();
  cid_cmd->add_option("--length", cid_length, "Prefix length (multiple of 4, at least 12)");

  bool certificate = false;
  auto* props_cmd = app.add_subcommand("props", "Compute invariants of graph6/sparse6 input");
  props_cmd->add_option("graphs", graphs, "Graphs (default: one per stdin line)");
  props_cmd->add_flag("--certificate", certificate, "Include a partial-cube embedding");

  auto* validate = app.add_subcommand("validate", "Check repository integrity and records");

  IngestOptions ingest_opt;
  auto* ingest = app.add_subcommand("ingest", "Add graphs from graph6/sparse6 files");
  ingest->add_option("files", ingest_opt.files, "Input files (default: stdin)");
  ingest->add_option("--collection", ingest_opt.collection, "Dataset to add the graphs to");
  ingest->add_option("--index-field", ingest_opt.index_field,
                     "Store (order, position among graphs of that order) in this field");
  ingest->add_option("--alias", ingest_opt.aliases, "Alias for every ingested graph");

  QueryOptions query_opt;
  auto add_query_options = [&](CLI::App* cmd) {
    cmd->add_option("q", query_opt.q, "Query expression (default: match all)");
    cmd->add_option("--type", query_opt.type, "Object type")->capture_default_str();
    cmd->add_option("--collection", query_opt.collections, "Restrict to datasets");
  };
  auto* query = app.add_subcommand("query", "Find objects matching a query");
  add_query_options(query);
  query->add_option("--orderby", query_opt.orderby, "Sort keys");
  query->add_option("--limit", query_opt.limit);
  query->add_option("--offset", query_opt.offset);
  query->add_option("--format", query_opt.format)
      ->check(CLI::IsMember({"json", "sparse6-lines", "csv"}));
  query->add_flag("--one", query_opt.one, "Only the first match (after --offset)");
  query->add_flag("--count", query_opt.count, "Print match counts instead of objects");
  query->add_option("--groupby", query_opt.groupby, "Group counts by these keys");
  auto* count = app.add_subcommand("count", "Count objects matching a query");
  add_query_options(count);
  count->add_option("--groupby", query_opt.groupby, "Group counts by these keys");

  std::string export_out;
  bool export_clear = false;
  auto* export_cmd = app.add_subcommand("export-changes", "Write the journal as a contribution");
  export_cmd->add_option("-o,--output", export_out, "Output file (default: stdout)");
  export_cmd->add_flag("--clear", export_clear, "Empty the local journal afterwards");

  std::string apply_file;
  auto* apply = app.add_subcommand("apply-changes", "Replay a contribution file");
  apply->add_option("file", apply_file, "Contribution file, or - for stdin")->required();

  std::vector<std::string> set_args;
  auto* set = app.add_subcommand("set-property", "Set one property of a stored object");
  set->add_option("args", set_args, "ID CLASS PROPERTY JSON-VALUE")->required()->expected(4);

  std::string coll_id, coll_name;
  std::vector<std::int64_t> coll_index;
  auto* add_coll = app.add_subcommand("add-collection", "Add a stored object to a dataset");
  add_coll->add_option("id", coll_id)->required();
  add_coll->add_option("collection", coll_name)->required();
  add_coll->add_option("--index", coll_index, "Index in the collection")->delimiter(',');

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();

  std::string fixtures_out = "data";
  auto* gen = app.add_subcommand("generate-fixtures", "Write the bundled specs and repository");
  gen->add_option("output", fixtures_out, "Output directory")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (canon->parsed()) return cmd_canon(graphs, canon_format, with_guid, in, out);
    if (cid_cmd->parsed()) return cmd_cid(cid_arg, cid_length, out);
    if (props_cmd->parsed()) return cmd_props(graphs, certificate, in, out);
    if (validate->parsed()) return cmd_validate(g, out, err);
    if (ingest->parsed()) return cmd_ingest(g, ingest_opt, in, out);
    if (query->parsed()) return cmd_query(g, query_opt, out);
    if (count->parsed()) {
      query_opt.count = true;
      return cmd_query(g, query_opt, out);
    }
    if (export_cmd->parsed()) return cmd_export(g, export_out, export_clear, out);
    if (apply->parsed()) return cmd_apply(g, apply_file, in, out);
    if (set->parsed()) return cmd_set(g, set_args, out);
    if (add_coll->parsed()) return cmd_add_collection(g, coll_id, coll_name, coll_index, out);
    if (serve->parsed()) return cmd_serve(g, host, port, err);
    if (gen->parsed()) {
      const auto corpus = fixtures::generate_fixtures(fixtures_out);
      out << "wrote " << corpus.records.size() << " objects and " << corpus.datasets.size()
          << " datasets to " << fixtures_out << "\n";
      return kExitOk;
    }
  } catch (const QueryError& e) {
    err << "query error: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace zoo::cli
