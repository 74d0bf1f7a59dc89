#include "loadcast/calendar.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace loadcast {

namespace chr = std::chrono;

namespace {

int parse_int(std::string_view text, std::size_t pos, std::size_t len, std::string_view whole) {
    if (pos + len > text.size()) {
        throw std::invalid_argument("truncated timestamp '" + std::string(whole) + "'");
    }
    int value = 0;
    const char* first = text.data() + pos;
    const char* last = first + len;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw std::invalid_argument("malformed timestamp '" + std::string(whole) + "'");
    }
    return value;
}

Date checked_date(int y, int m, int d, std::string_view whole) {
    const chr::year_month_day ymd{chr::year{y}, chr::month{static_cast<unsigned>(m)},
                                  chr::day{static_cast<unsigned>(d)}};
    if (m < 1 || m > 12 || d < 1 || !ymd.ok()) {
        throw std::invalid_argument("invalid calendar date '" + std::string(whole) + "'");
    }
    return Date{ymd};
}

}  // namespace

Date make_date(int year, unsigned month, unsigned day) {
    const chr::year_month_day ymd{chr::year{year}, chr::month{month}, chr::day{day}};
    if (!ymd.ok()) throw std::invalid_argument("invalid calendar date");
    return Date{ymd};
}

Hour make_hour(int year, unsigned month, unsigned day, unsigned hour) {
    if (hour > 23) throw std::invalid_argument("hour of day out of range");
    return Hour{make_date(year, month, day)} + chr::hours{hour};
}

Date date_of(Hour h) { return chr::floor<chr::days>(h); }

int year_of(Date d) { return static_cast<int>(chr::year_month_day{d}.year()); }

unsigned month_of(Date d) { return static_cast<unsigned>(chr::year_month_day{d}.month()); }

unsigned day_of_month(Date d) { return static_cast<unsigned>(chr::year_month_day{d}.day()); }

unsigned weekday_of(Date d) { return chr::weekday{d}.c_encoding(); }

unsigned hour_of_day(Hour h) { return static_cast<unsigned>((h - Hour{date_of(h)}).count()); }

int days_in_year(int year) { return chr::year{year}.is_leap() ? 366 : 365; }

int hours_in_year(int year) { return 24 * days_in_year(year); }

Date first_day_of_year(int year) { return make_date(year, 1, 1); }

Hour parse_iso_hour(std::string_view text) {
    while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
    const std::string_view whole = text;
    if (text.size() < 13 || text[4] != '-' || text[7] != '-' || (text[10] != 'T' && text[10] != ' ')) {
        throw std::invalid_argument("malformed timestamp '" + std::string(whole) + "'");
    }
    const Date date = checked_date(parse_int(text, 0, 4, whole), parse_int(text, 5, 2, whole),
                                   parse_int(text, 8, 2, whole), whole);
    const int hour = parse_int(text, 11, 2, whole);
    if (hour > 23) throw std::invalid_argument("hour out of range in '" + std::string(whole) + "'");
    std::size_t pos = 13;
    for (int field = 0; field < 2 && pos < text.size() && text[pos] == ':'; ++field) {
        if (parse_int(text, pos + 1, 2, whole) != 0) {
            throw std::invalid_argument("timestamp not on the hour: '" + std::string(whole) + "'");
        }
        pos += 3;
    }
    Hour result = Hour{date} + chr::hours{hour};
    if (pos == text.size()) return result;
    if (text[pos] == 'Z' && pos + 1 == text.size()) return result;
    if ((text[pos] == '+' || text[pos] == '-') && pos + 6 == text.size() && text[pos + 3] == ':') {
        const int off_h = parse_int(text, pos + 1, 2, whole);
        const int off_m = parse_int(text, pos + 4, 2, whole);
        if (off_m != 0) {
            throw std::invalid_argument("sub-hour UTC offsets unsupported: '" + std::string(whole) + "'");
        }
        return text[pos] == '+' ? result - chr::hours{off_h} : result + chr::hours{off_h};
    }
    throw std::invalid_argument("malformed timestamp suffix in '" + std::string(whole) + "'");
}

Date parse_iso_date(std::string_view text) {
    while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw std::invalid_argument("malformed date '" + std::string(text) + "'");
    }
    return checked_date(parse_int(text, 0, 4, text), parse_int(text, 5, 2, text),
                        parse_int(text, 8, 2, text), text);
}

std::string format_iso_hour(Hour h) {
    const chr::year_month_day ymd{date_of(h)};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02u:00:00Z", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), hour_of_day(h));
    return buf;
}

std::string format_iso_date(Date d) {
    const chr::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

}  // namespace loadcast
