#pragma once

#include <string>
#include <vector>

#include "apizer/catalog.hpp"
#include "apizer/pipeline.hpp"

namespace apizer::jobs {

/// One batch work item, as read from a JSON-lines file:
/// {"answer_id": int, "title": str, "url": str, "snippet": str}
struct JobRecord {
    long answer_id = 0;
    std::string title;
    std::string url;
    std::string snippet;
};

/// Parses one JSON line. Throws std::runtime_error on malformed input.
JobRecord parse_job_record(const std::string& line);

struct BatchOptions {
    double time_budget = 10.0;  // seconds per record
    int jobs = 1;
    std::string out_dir;  // empty: do not write files
    std::string verb_lexicon;
};

struct RecordResult {
    long answer_id = -1;
    std::string outcome;  // apized | already-api | skipped | failed
    std::string detail;   // reason or written file name
};

struct BatchSummary {
    int apized = 0;
    int already_api = 0;
    int skipped = 0;
    int failed = 0;
    int total() const { return apized + already_api + skipped + failed; }
};

/// Processes records in input order; the per-record outputs are independent
/// of the worker count. Malformed lines become failed records; processing
/// continues. Files are written as "Snippet<answerId>.java" under out_dir.
std::pair<std::vector<RecordResult>, BatchSummary> run_batch(
    const std::vector<std::string>& lines,
    const catalog::TypeCatalog& catalog,
    const BatchOptions& options);

}  // namespace apizer::jobs
