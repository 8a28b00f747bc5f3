#include "apizer/jobs.hpp"

#include <atomic>
#include <fstream>
#include <set>
#include <thread>

#include "json.hpp"

namespace apizer::jobs {

using nlohmann::json;

JobRecord parse_job_record(const std::string& line) {
    json rec;
    try {
        rec = json::parse(line);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("bad JSON: ") + e.what());
    }
    if (!rec.is_object() || !rec.contains("answer_id") || !rec.contains("snippet")) {
        throw std::runtime_error("record needs \"answer_id\" and \"snippet\"");
    }
    JobRecord out;
    if (!rec["answer_id"].is_number_integer()) {
        throw std::runtime_error("\"answer_id\" must be an integer");
    }
    out.answer_id = rec["answer_id"].get<long>();
    out.title = rec.value("title", "");
    out.url = rec.value("url", "");
    out.snippet = rec["snippet"].get<std::string>();
    if (out.snippet.empty()) throw std::runtime_error("empty snippet");
    return out;
}

namespace {

const char* outcome_word(pipeline::Outcome o) {
    switch (o) {
        case pipeline::Outcome::Apized: return "apized";
        case pipeline::Outcome::AlreadyApi: return "already-api";
        case pipeline::Outcome::Skipped: return "skipped";
        case pipeline::Outcome::Failed: return "failed";
    }
    return "?";
}

RecordResult process_line(const std::string& line, bool duplicate,
                          const catalog::TypeCatalog& catalog,
                          const BatchOptions& options) {
    RecordResult r;
    JobRecord job;
    try {
        job = parse_job_record(line);
    } catch (const std::exception& e) {
        r.outcome = "failed";
        r.detail = std::string("parse: ") + e.what();
        return r;
    }
    r.answer_id = job.answer_id;
    if (duplicate) {
        r.outcome = "failed";
        r.detail = "duplicate answer_id";
        return r;
    }
    pipeline::SoPage page{job.title, job.url, job.answer_id, 0};
    pipeline::ApizationResult result;
    try {
        result = pipeline::apize(job.snippet, page, catalog, options.time_budget,
                                 options.verb_lexicon);
    } catch (const std::exception& e) {
        r.outcome = "failed";
        r.detail = std::string("internal: ") + e.what();
        return r;
    }
    r.outcome = outcome_word(result.outcome);
    if (!result.ok()) {
        r.detail = result.reason;
        return r;
    }
    std::string rendered;
    try {
        rendered = result.render();
    } catch (const std::exception& e) {
        r.outcome = "failed";
        r.detail = std::string("render: ") + e.what();
        return r;
    }
    std::string file_name = result.class_name + ".java";
    if (!options.out_dir.empty()) {
        std::string path = options.out_dir + "/" + file_name;
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            r.outcome = "failed";
            r.detail = "cannot write " + path;
            return r;
        }
        out << rendered;
    }
    r.detail = file_name;
    return r;
}

}  // namespace

std::pair<std::vector<RecordResult>, BatchSummary> run_batch(
    const std::vector<std::string>& lines,
    const catalog::TypeCatalog& catalog,
    const BatchOptions& options) {
    // First occurrence of an answer id wins; later ones fail.
    std::vector<bool> duplicate(lines.size(), false);
    std::set<long> seen;
    for (size_t i = 0; i < lines.size(); ++i) {
        try {
            JobRecord job = parse_job_record(lines[i]);
            duplicate[i] = !seen.insert(job.answer_id).second;
        } catch (const std::exception&) {
        }
    }

    std::vector<RecordResult> results(lines.size());
    int workers = std::max(1, options.jobs);
    if (workers == 1 || lines.size() <= 1) {
        for (size_t i = 0; i < lines.size(); ++i) {
            results[i] = process_line(lines[i], duplicate[i], catalog, options);
        }
    } else {
        std::atomic<size_t> next{0};
        auto work = [&] {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= lines.size()) return;
                results[i] = process_line(lines[i], duplicate[i], catalog, options);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    BatchSummary summary;
    for (const auto& r : results) {
        if (r.outcome == "apized") ++summary.apized;
        else if (r.outcome == "already-api") ++summary.already_api;
        else if (r.outcome == "skipped") ++summary.skipped;
        else ++summary.failed;
    }
    return {std::move(results), summary};
}

}  // namespace apizer::jobs
