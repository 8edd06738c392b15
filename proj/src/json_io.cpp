#include "entromat/json_io.hpp"

#include "entromat/errors.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace entromat {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw FormatError("invalid JSON");
    return j;
}

long long get_int(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer()) throw FormatError(std::string("missing integer field \"") + key + "\"");
    return j[key].get<long long>();
}

}  // namespace

nlohmann::json matroid_to_json(const RankTable& M) {
    json j;
    j["m"] = M.m;
    j["rank"] = std::vector<int>(M.rank.begin(), M.rank.end());
    return j;
}

RankTable matroid_from_json(const json& j) {
    if (!j.is_object()) throw FormatError("matroid JSON must be an object");
    const int m = static_cast<int>(get_int(j, "m"));
    if (j.contains("rank")) {
        if (!j["rank"].is_array()) throw FormatError("\"rank\" must be an array");
        std::vector<int> table;
        for (const auto& v : j["rank"]) {
            if (!v.is_number_integer()) throw FormatError("rank entries must be integers");
            table.push_back(v.get<int>());
        }
        return make_matroid(m, table);
    }
    if (j.contains("circuits")) {
        if (!j["circuits"].is_array()) throw FormatError("\"circuits\" must be an array of arrays");
        std::vector<std::vector<int>> circ;
        for (const auto& c : j["circuits"]) {
            if (!c.is_array()) throw FormatError("\"circuits\" must be an array of arrays");
            std::vector<int> one;
            for (const auto& v : c) one.push_back(v.get<int>());
            circ.push_back(std::move(one));
        }
        return matroid_from_circuits(m, circ);
    }
    throw FormatError("matroid JSON needs \"rank\" or \"circuits\"");
}

nlohmann::json distribution_to_json(const FiniteDistribution& mu) {
    json j;
    j["q"] = mu.q;
    j["m"] = mu.m;
    json atoms = json::array();
    const BigInt max_ll = std::numeric_limits<long long>::max();
    for (const auto& [key, w] : mu.atoms) {
        if (numerator(w) > max_ll || denominator(w) > max_ll)
            throw FormatError("atom weight does not fit the integer JSON format");
        json a;
        a["word"] = unpack_word(key, mu.q, mu.m);
        a["num"] = numerator(w).convert_to<long long>();
        a["den"] = denominator(w).convert_to<long long>();
        atoms.push_back(std::move(a));
    }
    j["atoms"] = std::move(atoms);
    return j;
}

FiniteDistribution distribution_from_json(const json& j) {
    if (!j.is_object()) throw FormatError("distribution JSON must be an object");
    const int q = static_cast<int>(get_int(j, "q"));
    const int m = static_cast<int>(get_int(j, "m"));
    if (!j.contains("atoms") || !j["atoms"].is_array()) throw FormatError("missing \"atoms\" array");
    std::map<std::uint64_t, Rational> atoms;
    for (const auto& a : j["atoms"]) {
        if (!a.is_object() || !a.contains("word") || !a["word"].is_array())
            throw FormatError("atom needs a \"word\" array");
        std::vector<int> word;
        for (const auto& v : a["word"]) word.push_back(v.get<int>());
        if (static_cast<int>(word.size()) != m) throw FormatError("atom word length mismatch");
        const long long num = get_int(a, "num");
        const long long den = get_int(a, "den");
        if (den <= 0) throw FormatError("atom denominator must be positive");
        if (q < 2) throw FormatError("alphabet size must be >= 2");
        const std::uint64_t key = pack_word(word, q);
        if (atoms.count(key)) throw FormatError("duplicate atom word");
        atoms[key] = Rational(num, den);
    }
    return make_distribution(q, m, std::move(atoms));
}

nlohmann::json code_to_json(const AffineCode& c) {
    json j;
    j["s"] = c.s;
    j["m"] = c.m;
    json words = json::array();
    for (std::size_t i = 0; i < c.words.size(); ++i) words.push_back(c.word(i));
    j["words"] = std::move(words);
    return j;
}

AffineCode code_from_json(const json& j) {
    if (!j.is_object()) throw FormatError("code JSON must be an object");
    const int s = static_cast<int>(get_int(j, "s"));
    const int m = static_cast<int>(get_int(j, "m"));
    if (!j.contains("words") || !j["words"].is_array()) throw FormatError("missing \"words\" array");
    std::vector<std::vector<int>> words;
    for (const auto& w : j["words"]) {
        if (!w.is_array()) throw FormatError("codewords must be arrays");
        std::vector<int> one;
        for (const auto& v : w) one.push_back(v.get<int>());
        words.push_back(std::move(one));
    }
    return make_code(s, m, words);
}

nlohmann::json representation_to_json(const Representation& r) {
    json j;
    j["p"] = r.p;
    j["d"] = r.d;
    j["columns"] = r.columns;
    return j;
}

Representation representation_from_json(const json& j) {
    if (!j.is_object()) throw FormatError("representation JSON must be an object");
    Representation r;
    r.p = get_int(j, "p");
    r.d = static_cast<int>(get_int(j, "d"));
    if (!is_prime(r.p)) throw FormatError("representation modulus must be prime");
    if (!j.contains("columns") || !j["columns"].is_array()) throw FormatError("missing \"columns\" array");
    for (const auto& c : j["columns"]) {
        if (!c.is_array()) throw FormatError("columns must be arrays");
        std::vector<int> col;
        for (const auto& v : c) {
            const int x = v.get<int>();
            if (x < 0 || x >= r.p) throw FormatError("column entry out of [0,p)");
            col.push_back(x);
        }
        if (static_cast<int>(col.size()) != r.d) throw FormatError("column length != d");
        r.columns.push_back(std::move(col));
    }
    return r;
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path);
    out << j.dump(2) << '\n';
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    std::uint64_t h = 1469598103934665603ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace entromat
