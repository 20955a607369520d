#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hunkbench/classifier.hpp"
#include "hunkbench/extractor.hpp"
#include "hunkbench/miner.hpp"

namespace hunkbench {

inline constexpr int kSchemaVersion = 1;

/// Record files are JSON Lines preceded by one comment line
/// `# hunkbench <kind> schema_version=<n>`.
enum class RecordKind { candidates, samples, results };

std::string_view record_kind_name(RecordKind kind) noexcept;
std::string header_line(RecordKind kind);

std::string sample_to_json(const MergeSample& sample);
/// Throws FormatError, including when conflict_text disagrees with the
/// structural fields.
MergeSample sample_from_json(std::string_view line);

std::string candidate_to_json(const CandidateHunk& candidate);
CandidateHunk candidate_from_json(std::string_view line);

/// One evaluated output.
struct ResultRecord {
    std::string sample_id;
    std::string model_id;
    Language language = Language::unknown;
    /// False when the endpoint failed; category and reward are then unset.
    bool ok = true;
    Category category = Category::invalid_markdown;
    RewardBreakdown reward;
    std::string error;

    friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

std::string result_to_json(const ResultRecord& record);
ResultRecord result_from_json(std::string_view line);

/// Lines of a record file after the header. Throws FormatError when the
/// header is missing, of another kind, or of an unknown schema version.
std::vector<std::string> read_record_lines(const std::filesystem::path& path, RecordKind kind);

/// Strict readers: any bad record throws FormatError naming the line.
std::vector<MergeSample> read_samples(const std::filesystem::path& path);
std::vector<ResultRecord> read_results(const std::filesystem::path& path);

/// Lenient reader: bad records are skipped and described in `skipped`.
std::vector<CandidateHunk> read_candidates(const std::filesystem::path& path,
                                           std::vector<std::string>* skipped = nullptr);

/// Serialises records and writes them atomically. Samples must have unique ids.
void write_samples(const std::filesystem::path& path, const std::vector<MergeSample>& samples);
void write_candidates(const std::filesystem::path& path, const std::vector<CandidateHunk>& candidates);
void write_results(const std::filesystem::path& path, const std::vector<ResultRecord>& records);

/// Writes through a sibling temporary file and a rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

/// SHA-256 of a file's bytes.
std::string file_sha256(const std::filesystem::path& path);

}  // namespace hunkbench
