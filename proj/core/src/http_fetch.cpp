#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <map>
#include <nlohmann/json.hpp>

#include "loadcast/error.hpp"
#include "loadcast/ingest.hpp"

namespace loadcast::ingest {

namespace {

struct Endpoint {
    std::string origin;  // scheme://host[:port]
    std::string path;
};

Endpoint split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw FetchError("base URL lacks a scheme: " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

int record_year(const nlohmann::json& rec) {
    for (const char* key : {"year", "date"}) {
        if (!rec.contains(key)) continue;
        const auto& v = rec.at(key);
        if (v.is_number_integer()) return v.get<int>();
        if (v.is_string()) {
            const auto s = v.get<std::string>();
            try {
                std::size_t used = 0;
                const int y = std::stoi(s, &used);
                if (used == s.size()) return y;
            } catch (const std::exception&) {
            }
            throw FetchError("unparseable year '" + s + "'");
        }
    }
    throw FetchError("record without year/date field: " + rec.dump());
}

struct Page {
    std::vector<nlohmann::json> records;
    int pages = 1;
};

Page parse_page(const std::string& body) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
        throw FetchError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_array()) throw FetchError("expected a JSON array");
    Page page;
    if (doc.size() == 2 && doc[0].is_object() && doc[0].contains("pages") && doc[1].is_array()) {
        const auto& pages = doc[0].at("pages");
        page.pages = pages.is_string() ? std::stoi(pages.get<std::string>()) : pages.get<int>();
        for (const auto& rec : doc[1]) page.records.push_back(rec);
        return page;
    }
    if (doc.size() == 1 && doc[0].is_object() && doc[0].contains("message")) {
        throw FetchError("server error: " + doc[0].dump());
    }
    for (const auto& rec : doc) page.records.push_back(rec);
    return page;
}

}  // namespace

YearlySeries fetch_macro_http(const std::string& base_url, const std::string& indicator,
                              const std::string& country, YearRange years, const FetchOptions& options) {
    if (years.last < years.first) throw FetchError("empty year range");
    const Endpoint ep = split_url(base_url);
    httplib::Client client(ep.origin);
    client.set_connection_timeout(options.timeout_seconds, 0);
    client.set_read_timeout(options.timeout_seconds, 0);
    client.set_follow_location(true);

    std::map<int, double> by_year;
    int pages = 1;
    for (int page = 1; page <= pages; ++page) {
        if (page > options.max_pages) throw FetchError("too many pages for " + indicator);
        const httplib::Params params{
            {"indicator", indicator},
            {"country", country},
            {"date", std::to_string(years.first) + ":" + std::to_string(years.last)},
            {"format", "json"},
            {"per_page", std::to_string(options.per_page)},
            {"page", std::to_string(page)},
        };
        auto res = client.Get(ep.path, params, httplib::Headers{});
        if (!res) throw FetchError("request for " + indicator + " failed: " + httplib::to_string(res.error()));
        if (res->status != 200) {
            throw FetchError("request for " + indicator + " returned HTTP " + std::to_string(res->status));
        }
        Page parsed = parse_page(res->body);
        pages = parsed.pages;
        for (const auto& rec : parsed.records) {
            if (!rec.is_object()) throw FetchError("record is not an object: " + rec.dump());
            const int year = record_year(rec);
            if (!rec.contains("value") || rec.at("value").is_null()) {
                throw FetchError(indicator + ": null value for " + std::to_string(year));
            }
            if (!rec.at("value").is_number()) throw FetchError(indicator + ": non-numeric value");
            if (year < years.first || year > years.last) continue;
            if (!by_year.emplace(year, rec.at("value").get<double>()).second) {
                throw FetchError(indicator + ": duplicate record for " + std::to_string(year));
            }
        }
    }
    if (by_year.empty()) throw FetchError(indicator + ": no records returned");
    const int first = by_year.begin()->first;
    std::vector<double> values;
    for (int y = first; y <= by_year.rbegin()->first; ++y) {
        const auto it = by_year.find(y);
        if (it == by_year.end()) throw FetchError(indicator + ": missing year " + std::to_string(y));
        values.push_back(it->second);
    }
    return YearlySeries(first, std::move(values));
}

}  // namespace loadcast::ingest
