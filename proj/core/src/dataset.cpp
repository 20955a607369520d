#include "hunkbench/dataset.hpp"

#include <json.hpp>
#include <spdlog/spdlog.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "hunkbench/error.hpp"
#include "hunkbench/hash.hpp"

namespace hunkbench {

using nlohmann::json;

std::string_view record_kind_name(RecordKind kind) noexcept {
    switch (kind) {
        case RecordKind::candidates: return "candidates";
        case RecordKind::samples: return "samples";
        case RecordKind::results: return "results";
    }
    return "";
}

std::string header_line(RecordKind kind) {
    return "# hunkbench " + std::string(record_kind_name(kind)) + " schema_version=" + std::to_string(kSchemaVersion);
}

namespace {

std::string dump(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::replace); }

json lines_json(const LineSeq& seq) {
    return {{"lines", seq.lines}, {"eol", seq.eol == Eol::crlf ? "crlf" : "lf"}, {"final_newline", seq.final_newline}};
}

LineSeq lines_from(const json& j) {
    LineSeq seq;
    seq.lines = j.at("lines").get<std::vector<std::string>>();
    const auto eol = j.at("eol").get<std::string>();
    if (eol == "crlf") seq.eol = Eol::crlf;
    else if (eol != "lf") throw FormatError("unknown eol '" + eol + "'");
    seq.final_newline = j.at("final_newline").get<bool>();
    return seq;
}

Language language_from(const json& j) {
    const auto id = j.get<std::string>();
    if (id == "unknown") return Language::unknown;
    const auto lang = parse_language(id);
    if (!lang) throw FormatError("unknown language '" + id + "'");
    return *lang;
}

json parse_record(std::string_view line) {
    auto doc = json::parse(line, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) throw FormatError("record is not a JSON object");
    const auto version = doc.value("schema_version", -1);
    if (version != kSchemaVersion) throw FormatError("unsupported schema_version " + std::to_string(version));
    return doc;
}

template <typename F>
auto decode(std::string_view what, F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw FormatError(std::string(what) + ": " + e.what());
    }
}

std::string join_records(RecordKind kind, const std::vector<std::string>& lines) {
    std::string out = header_line(kind);
    out.push_back('\n');
    for (const auto& l : lines) {
        out += l;
        out.push_back('\n');
    }
    return out;
}

}  // namespace

std::string sample_to_json(const MergeSample& s) {
    const json j = {
        {"schema_version", kSchemaVersion},
        {"id", s.id},
        {"language", language_id(s.language)},
        {"conflict_text", s.conflict_text},
        {"ground_truth", lines_json(s.ground_truth)},
        {"left", lines_json(s.left)},
        {"base", lines_json(s.base)},
        {"right", lines_json(s.right)},
        {"pre_context", lines_json(s.pre_context)},
        {"post_context", lines_json(s.post_context)},
        {"repo_id", s.repo_id},
        {"merge_commit", s.merge_commit},
        {"path", s.path},
        {"hunk_index", s.hunk_index},
    };
    return dump(j);
}

MergeSample sample_from_json(std::string_view line) {
    const auto j = parse_record(line);
    auto s = decode("sample", [&] {
        MergeSample s;
        s.id = j.at("id").get<std::string>();
        s.language = language_from(j.at("language"));
        s.conflict_text = j.at("conflict_text").get<std::string>();
        s.ground_truth = lines_from(j.at("ground_truth"));
        s.left = lines_from(j.at("left"));
        s.base = lines_from(j.at("base"));
        s.right = lines_from(j.at("right"));
        s.pre_context = lines_from(j.at("pre_context"));
        s.post_context = lines_from(j.at("post_context"));
        s.repo_id = j.at("repo_id").get<std::string>();
        s.merge_commit = j.at("merge_commit").get<std::string>();
        s.path = j.at("path").get<std::string>();
        s.hunk_index = j.at("hunk_index").get<std::size_t>();
        return s;
    });
    const auto rendered = render_sample_conflict(s.pre_context, s.left, s.base, s.right, s.post_context);
    if (rendered != s.conflict_text) throw FormatError("sample " + s.id + ": conflict_text does not match its parts");
    return s;
}

std::string candidate_to_json(const CandidateHunk& c) {
    json regions = json::array();
    for (const auto& r : c.neighbourhood.regions) {
        if (const auto* s = std::get_if<StableRegion>(&r)) {
            regions.push_back({{"kind", "stable"}, {"lines", lines_json(s->lines)}});
        } else {
            const auto& k = std::get<ConflictRegion>(r);
            regions.push_back({{"kind", "conflict"},
                               {"left", lines_json(k.left)},
                               {"base", lines_json(k.base)},
                               {"right", lines_json(k.right)},
                               {"has_base", k.has_base}});
        }
    }
    const auto& sc = *c.scenario;
    const json j = {
        {"schema_version", kSchemaVersion},
        {"id", c.id()},
        {"repo_id", sc.repo_id},
        {"merge_commit", sc.merge_commit},
        {"parent_left", sc.parent_left},
        {"parent_right", sc.parent_right},
        {"merge_base", sc.merge_base},
        {"conflicted_paths", sc.conflicted_paths},
        {"path", c.path},
        {"language", language_id(c.language)},
        {"hunk_index", c.hunk_index},
        {"left", lines_json(c.hunk.left)},
        {"base", lines_json(c.hunk.base)},
        {"right", lines_json(c.hunk.right)},
        {"neighbourhood", regions},
        {"local_index", c.local_index},
        {"resolved_file", lines_json(c.resolved_file)},
    };
    return dump(j);
}

CandidateHunk candidate_from_json(std::string_view line) {
    const auto j = parse_record(line);
    auto c = decode("candidate", [&] {
        auto sc = std::make_shared<MergeScenario>();
        sc->repo_id = j.at("repo_id").get<std::string>();
        sc->merge_commit = j.at("merge_commit").get<std::string>();
        sc->parent_left = j.at("parent_left").get<std::string>();
        sc->parent_right = j.at("parent_right").get<std::string>();
        sc->merge_base = j.at("merge_base").get<std::string>();
        sc->conflicted_paths = j.at("conflicted_paths").get<std::vector<std::string>>();

        CandidateHunk c;
        c.scenario = std::move(sc);
        c.path = j.at("path").get<std::string>();
        c.language = language_from(j.at("language"));
        c.hunk_index = j.at("hunk_index").get<std::size_t>();
        c.hunk.left = lines_from(j.at("left"));
        c.hunk.base = lines_from(j.at("base"));
        c.hunk.right = lines_from(j.at("right"));
        for (const auto& r : j.at("neighbourhood")) {
            const auto kind = r.at("kind").get<std::string>();
            if (kind == "stable") {
                c.neighbourhood.regions.emplace_back(StableRegion{lines_from(r.at("lines"))});
            } else if (kind == "conflict") {
                c.neighbourhood.regions.emplace_back(ConflictRegion{lines_from(r.at("left")), lines_from(r.at("base")),
                                                                    lines_from(r.at("right")),
                                                                    r.at("has_base").get<bool>()});
            } else {
                throw FormatError("unknown region kind '" + kind + "'");
            }
        }
        c.local_index = j.at("local_index").get<std::size_t>();
        c.resolved_file = lines_from(j.at("resolved_file"));
        if (j.at("id").get<std::string>() != c.id()) throw FormatError("candidate id does not match its provenance");
        return c;
    });
    if (c.local_index >= c.neighbourhood.conflict_count())
        throw FormatError("candidate " + c.id() + ": local_index outside its neighbourhood");
    const auto& k = c.neighbourhood.conflict(c.local_index);
    if (k.left != c.hunk.left || k.base != c.hunk.base || k.right != c.hunk.right)
        throw FormatError("candidate " + c.id() + ": hunk does not match its neighbourhood");
    return c;
}

std::string result_to_json(const ResultRecord& r) {
    json j = {
        {"schema_version", kSchemaVersion},
        {"sample_id", r.sample_id},
        {"model_id", r.model_id},
        {"language", language_id(r.language)},
        {"disposition", r.ok ? "ok" : "error"},
    };
    if (r.ok) {
        j["category"] = category_name(r.category);
        j["reward"] = {{"reasoning", r.reward.reasoning},
                       {"format", r.reward.format},
                       {"resolution", r.reward.resolution},
                       {"total", r.reward.total()}};
    } else {
        j["error"] = r.error;
    }
    return dump(j);
}

ResultRecord result_from_json(std::string_view line) {
    const auto j = parse_record(line);
    return decode("result", [&] {
        ResultRecord r;
        r.sample_id = j.at("sample_id").get<std::string>();
        r.model_id = j.at("model_id").get<std::string>();
        r.language = language_from(j.at("language"));
        const auto disposition = j.at("disposition").get<std::string>();
        if (disposition == "error") {
            r.ok = false;
            r.error = j.at("error").get<std::string>();
            return r;
        }
        if (disposition != "ok") throw FormatError("unknown disposition '" + disposition + "'");
        const auto name = j.at("category").get<std::string>();
        const auto category = parse_category(name);
        if (!category) throw FormatError("unknown category '" + name + "'");
        r.category = *category;
        const auto& reward = j.at("reward");
        r.reward.reasoning = reward.at("reasoning").get<int>();
        r.reward.format = reward.at("format").get<int>();
        r.reward.resolution = reward.at("resolution").get<double>();
        return r;
    });
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    thread_local std::mt19937_64 rng{std::random_device{}()};
    auto tmp = path;
    tmp += ".tmp." + std::to_string(rng());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string file_sha256(const std::filesystem::path& path) { return sha256_hex(read_file(path)); }

std::vector<std::string> read_record_lines(const std::filesystem::path& path, RecordKind kind) {
    const auto text = read_file(path);
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != header_line(kind)) {
        throw FormatError(path.string() + ": expected header '" + header_line(kind) + "'");
    }
    while (std::getline(in, line)) {
        if (!line.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

std::vector<MergeSample> read_samples(const std::filesystem::path& path) {
    std::vector<MergeSample> out;
    std::set<std::string> ids;
    const auto lines = read_record_lines(path, RecordKind::samples);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        try {
            out.push_back(sample_from_json(lines[i]));
        } catch (const FormatError& e) {
            throw FormatError(path.string() + " record " + std::to_string(i + 1) + ": " + e.what());
        }
        if (!ids.insert(out.back().id).second) throw FormatError(path.string() + ": duplicate id " + out.back().id);
    }
    return out;
}

std::vector<ResultRecord> read_results(const std::filesystem::path& path) {
    std::vector<ResultRecord> out;
    const auto lines = read_record_lines(path, RecordKind::results);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        try {
            out.push_back(result_from_json(lines[i]));
        } catch (const FormatError& e) {
            throw FormatError(path.string() + " record " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    return out;
}

std::vector<CandidateHunk> read_candidates(const std::filesystem::path& path, std::vector<std::string>* skipped) {
    std::vector<CandidateHunk> out;
    const auto lines = read_record_lines(path, RecordKind::candidates);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        try {
            out.push_back(candidate_from_json(lines[i]));
        } catch (const FormatError& e) {
            const auto msg = "record " + std::to_string(i + 1) + ": " + e.what();
            spdlog::warn("{}: skipping {}", path.string(), msg);
            if (skipped != nullptr) skipped->push_back(msg);
        }
    }
    return out;
}

void write_samples(const std::filesystem::path& path, const std::vector<MergeSample>& samples) {
    std::set<std::string> ids;
    std::vector<std::string> lines;
    for (const auto& s : samples) {
        if (!ids.insert(s.id).second) throw FormatError("duplicate sample id " + s.id);
        lines.push_back(sample_to_json(s));
    }
    write_file_atomic(path, join_records(RecordKind::samples, lines));
}

void write_candidates(const std::filesystem::path& path, const std::vector<CandidateHunk>& candidates) {
    std::vector<std::string> lines;
    for (const auto& c : candidates) lines.push_back(candidate_to_json(c));
    write_file_atomic(path, join_records(RecordKind::candidates, lines));
}

void write_results(const std::filesystem::path& path, const std::vector<ResultRecord>& records) {
    std::vector<std::string> lines;
    for (const auto& r : records) lines.push_back(result_to_json(r));
    write_file_atomic(path, join_records(RecordKind::results, lines));
}

}  // namespace hunkbench
