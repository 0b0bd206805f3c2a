#include "centprune/npy.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include "centprune/error.hpp"

namespace centprune {

namespace {

constexpr char kMagic[6] = {'\x93', 'N', 'U', 'M', 'P', 'Y'};

static_assert(std::endian::native == std::endian::little,
              "payload decoding assumes a little-endian host");

struct HeaderDict {
    std::string descr;
    bool fortran_order = false;
    std::vector<std::size_t> shape;
};

void skip_ws(const std::string& s, std::size_t& pos) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n')) ++pos;
}

bool consume(const std::string& s, std::size_t& pos, char ch) {
    skip_ws(s, pos);
    if (pos < s.size() && s[pos] == ch) {
        ++pos;
        return true;
    }
    return false;
}

std::string parse_py_string(const std::string& s, std::size_t& pos) {
    skip_ws(s, pos);
    if (pos >= s.size() || (s[pos] != '\'' && s[pos] != '"'))
        throw Error(ErrorCode::BadHeader, "expected quoted string in header dict");
    char quote = s[pos++];
    std::string out;
    while (pos < s.size() && s[pos] != quote) out.push_back(s[pos++]);
    if (pos >= s.size()) throw Error(ErrorCode::BadHeader, "unterminated string in header dict");
    ++pos;
    return out;
}

// Parses the Python-literal header dict. Keys may appear in any order;
// unknown keys are rejected.
HeaderDict parse_header_dict(const std::string& text) {
    HeaderDict h;
    bool saw_descr = false, saw_order = false, saw_shape = false;
    std::size_t pos = 0;
    if (!consume(text, pos, '{')) throw Error(ErrorCode::BadHeader, "header dict must start with '{'");
    while (true) {
        skip_ws(text, pos);
        if (pos >= text.size()) throw Error(ErrorCode::BadHeader, "unterminated header dict");
        if (text[pos] == '}') {
            ++pos;
            break;
        }
        std::string key = parse_py_string(text, pos);
        if (!consume(text, pos, ':')) throw Error(ErrorCode::BadHeader, "missing ':' in header dict");
        if (key == "descr") {
            h.descr = parse_py_string(text, pos);
            saw_descr = true;
        } else if (key == "fortran_order") {
            skip_ws(text, pos);
            if (text.compare(pos, 4, "True") == 0) {
                h.fortran_order = true;
                pos += 4;
            } else if (text.compare(pos, 5, "False") == 0) {
                h.fortran_order = false;
                pos += 5;
            } else {
                throw Error(ErrorCode::BadHeader, "fortran_order must be True or False");
            }
            saw_order = true;
        } else if (key == "shape") {
            if (!consume(text, pos, '(')) throw Error(ErrorCode::BadHeader, "shape must be a tuple");
            while (true) {
                skip_ws(text, pos);
                if (pos >= text.size()) throw Error(ErrorCode::BadHeader, "unterminated shape tuple");
                if (text[pos] == ')') {
                    ++pos;
                    break;
                }
                std::size_t dim = 0;
                bool any_digit = false;
                while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
                    std::size_t next = dim * 10 + static_cast<std::size_t>(text[pos] - '0');
                    if (next < dim) throw Error(ErrorCode::BadHeader, "shape dimension overflows");
                    dim = next;
                    any_digit = true;
                    ++pos;
                }
                if (!any_digit) throw Error(ErrorCode::BadHeader, "shape tuple entry is not an integer");
                if (dim == 0) throw Error(ErrorCode::BadHeader, "zero-sized dimensions are not supported");
                h.shape.push_back(dim);
                skip_ws(text, pos);
                if (pos < text.size() && text[pos] == ',') ++pos;
            }
            saw_shape = true;
        } else {
            throw Error(ErrorCode::BadHeader, "unknown header key '" + key + "'");
        }
        skip_ws(text, pos);
        if (pos < text.size() && text[pos] == ',') ++pos;
    }
    skip_ws(text, pos);
    if (pos != text.size()) throw Error(ErrorCode::BadHeader, "trailing bytes after header dict");
    if (!saw_descr || !saw_order || !saw_shape)
        throw Error(ErrorCode::BadHeader, "header dict must declare descr, fortran_order and shape");
    return h;
}

} // namespace

Tensor parse_npy(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 8 || std::memcmp(bytes.data(), kMagic, 6) != 0)
        throw Error(ErrorCode::BadMagic, "missing \\x93NUMPY magic");
    const std::uint8_t major = bytes[6];
    const std::uint8_t minor = bytes[7];
    if (!((major == 1 || major == 2) && minor == 0))
        throw Error(ErrorCode::BadHeader, "unsupported format version " + std::to_string(major) +
                                              "." + std::to_string(minor));

    std::size_t header_len = 0;
    std::size_t data_start = 0;
    if (major == 1) {
        if (bytes.size() < 10) throw Error(ErrorCode::BadHeader, "truncated v1 header length");
        header_len = static_cast<std::size_t>(bytes[8]) | (static_cast<std::size_t>(bytes[9]) << 8);
        data_start = 10 + header_len;
    } else {
        if (bytes.size() < 12) throw Error(ErrorCode::BadHeader, "truncated v2 header length");
        header_len = static_cast<std::size_t>(bytes[8]) | (static_cast<std::size_t>(bytes[9]) << 8) |
                     (static_cast<std::size_t>(bytes[10]) << 16) |
                     (static_cast<std::size_t>(bytes[11]) << 24);
        data_start = 12 + header_len;
    }
    if (data_start > bytes.size()) throw Error(ErrorCode::BadHeader, "header runs past end of file");

    const std::string header_text(reinterpret_cast<const char*>(bytes.data()) + (data_start - header_len),
                                  header_len);
    HeaderDict h = parse_header_dict(header_text);

    if (h.fortran_order)
        throw Error(ErrorCode::FortranOrderUnsupported, "fortran_order arrays are not supported");

    std::size_t elem_size = 0;
    if (h.descr == "<f4")
        elem_size = 4;
    else if (h.descr == "<f8")
        elem_size = 8;
    else
        throw Error(ErrorCode::UnsupportedDtype, "dtype '" + h.descr + "' (only <f4 and <f8)");

    std::size_t count = 1;
    for (std::size_t d : h.shape) {
        if (d != 0 && count > std::numeric_limits<std::size_t>::max() / d)
            throw Error(ErrorCode::BadHeader, "shape product overflows");
        count *= d;
    }

    const std::size_t payload = bytes.size() - data_start;
    if (payload != count * elem_size)
        throw Error(ErrorCode::ShapeMismatch, "payload holds " + std::to_string(payload) +
                                                  " bytes but shape needs " +
                                                  std::to_string(count * elem_size));

    Tensor t;
    t.shape = h.shape;
    t.data.resize(count);
    const std::uint8_t* p = bytes.data() + data_start;
    if (elem_size == 4) {
        for (std::size_t i = 0; i < count; ++i) {
            float v;
            std::memcpy(&v, p + i * 4, 4);
            t.data[i] = static_cast<double>(v);
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            double v;
            std::memcpy(&v, p + i * 8, 8);
            t.data[i] = v;
        }
    }
    for (std::size_t i = 0; i < count; ++i)
        if (!std::isfinite(t.data[i]))
            throw Error(ErrorCode::NonFiniteValue, "non-finite value at flat index " + std::to_string(i));
    return t;
}

Tensor parse_npy_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::MissingFile, "cannot open '" + path + "'");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return parse_npy(bytes);
}

std::vector<std::uint8_t> write_npy(const Tensor& t, NpyDtype dtype) {
    std::string dict = "{'descr': '";
    dict += (dtype == NpyDtype::f4) ? "<f4" : "<f8";
    dict += "', 'fortran_order': False, 'shape': (";
    for (std::size_t i = 0; i < t.shape.size(); ++i) {
        dict += std::to_string(t.shape[i]);
        if (t.shape.size() == 1 || i + 1 < t.shape.size()) dict += ",";
        if (i + 1 < t.shape.size()) dict += " ";
    }
    dict += "), }";
    // Pad so the payload starts on a 64-byte boundary, terminator included.
    std::size_t unpadded = 10 + dict.size() + 1;
    std::size_t padded = (unpadded + 63) / 64 * 64;
    dict.append(padded - unpadded, ' ');
    dict += '\n';

    std::vector<std::uint8_t> out;
    out.reserve(10 + dict.size() + t.data.size() * (dtype == NpyDtype::f4 ? 4 : 8));
    out.insert(out.end(), kMagic, kMagic + 6);
    out.push_back(1);
    out.push_back(0);
    out.push_back(static_cast<std::uint8_t>(dict.size() & 0xff));
    out.push_back(static_cast<std::uint8_t>((dict.size() >> 8) & 0xff));
    out.insert(out.end(), dict.begin(), dict.end());

    if (dtype == NpyDtype::f4) {
        for (double d : t.data) {
            float v = static_cast<float>(d);
            std::uint8_t buf[4];
            std::memcpy(buf, &v, 4);
            out.insert(out.end(), buf, buf + 4);
        }
    } else {
        for (double d : t.data) {
            std::uint8_t buf[8];
            std::memcpy(buf, &d, 8);
            out.insert(out.end(), buf, buf + 8);
        }
    }
    return out;
}

void write_npy_file(const std::string& path, const Tensor& t, NpyDtype dtype) {
    auto bytes = write_npy(t, dtype);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::MissingFile, "cannot write '" + path + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

} // namespace centprune
