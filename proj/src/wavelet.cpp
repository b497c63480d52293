#include "fsbi/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <map>

namespace fsbi {

namespace {

struct TableEntry {
    const char* name;
    std::initializer_list<double> dec_lo, dec_hi, rec_lo, rec_hi;
};

const TableEntry kFilterTable[] = {
#include "wavelet_tables.inc"
};

std::string family_prefix(WaveletFamily family) {
    switch (family) {
        case WaveletFamily::Haar: return "haar";
        case WaveletFamily::Daubechies: return "db";
        case WaveletFamily::Symlet: return "sym";
        case WaveletFamily::Biorthogonal: return "bior";
        case WaveletFamily::Coiflet: return "coif";
    }
    throw UnknownWavelet("invalid wavelet family");
}

Eigen::VectorXd to_vector(std::initializer_list<double> v) {
    Eigen::VectorXd out(static_cast<Index>(v.size()));
    Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

}  // namespace

std::string WaveletSpec::name() const {
    if (family == WaveletFamily::Haar) return "haar";
    std::string p = family_prefix(family);
    if (family == WaveletFamily::Biorthogonal)
        return p + std::to_string(order / 10) + "." + std::to_string(order % 10);
    return p + std::to_string(order);
}

std::pair<WaveletFamily, int> parse_wavelet_name(const std::string& name) {
    if (name == "haar") return {WaveletFamily::Haar, 1};
    auto split = [&](const std::string& prefix) {
        return name.substr(prefix.size());
    };
    try {
        if (name.rfind("bior", 0) == 0) {
            std::string rest = split("bior");
            auto dot = rest.find('.');
            if (dot == std::string::npos || dot == 0 || dot + 1 >= rest.size())
                throw UnknownWavelet("bad biorthogonal order in '" + name + "'");
            int n = std::stoi(rest.substr(0, dot));
            int m = std::stoi(rest.substr(dot + 1));
            return {WaveletFamily::Biorthogonal, n * 10 + m};
        }
        if (name.rfind("db", 0) == 0) return {WaveletFamily::Daubechies, std::stoi(split("db"))};
        if (name.rfind("sym", 0) == 0) return {WaveletFamily::Symlet, std::stoi(split("sym"))};
        if (name.rfind("coif", 0) == 0) return {WaveletFamily::Coiflet, std::stoi(split("coif"))};
    } catch (const std::logic_error&) {
        throw UnknownWavelet("cannot parse wavelet name '" + name + "'");
    }
    throw UnknownWavelet("unknown wavelet name '" + name + "'");
}

ExtensionMode parse_extension_mode(const std::string& name) {
    static const std::map<std::string, ExtensionMode> kModes = {
        {"symmetric", ExtensionMode::Symmetric},
        {"reflect", ExtensionMode::Reflect},
        {"antireflect", ExtensionMode::Antireflect},
        {"periodic", ExtensionMode::Periodic},
        {"zero", ExtensionMode::Zero},
    };
    auto it = kModes.find(name);
    if (it == kModes.end()) throw UnknownWavelet("unknown extension mode '" + name + "'");
    return it->second;
}

std::string extension_mode_name(ExtensionMode mode) {
    switch (mode) {
        case ExtensionMode::Symmetric: return "symmetric";
        case ExtensionMode::Reflect: return "reflect";
        case ExtensionMode::Antireflect: return "antireflect";
        case ExtensionMode::Periodic: return "periodic";
        case ExtensionMode::Zero: return "zero";
    }
    return "?";
}

FilterBank filter_bank(const WaveletSpec& spec) {
    const std::string name = spec.name();
    for (const TableEntry& e : kFilterTable) {
        if (name == e.name) {
            FilterBank bank;
            bank.dec_lo = to_vector(e.dec_lo);
            bank.dec_hi = to_vector(e.dec_hi);
            bank.rec_lo = to_vector(e.rec_lo);
            bank.rec_hi = to_vector(e.rec_hi);
            return bank;
        }
    }
    throw UnknownWavelet("no filter table entry for '" + name + "'");
}

std::vector<WaveletSpec> supported_wavelets() {
    std::vector<WaveletSpec> out;
    for (const TableEntry& e : kFilterTable) {
        auto [family, order] = parse_wavelet_name(e.name);
        out.push_back(WaveletSpec{family, order, ExtensionMode::Reflect});
    }
    return out;
}

bool is_orthogonal(WaveletFamily family) {
    return family != WaveletFamily::Biorthogonal;
}

namespace {

// Index into the length-n signal for extended position i (may be negative),
// for the modes that are pure index maps.
Index map_index(Index i, Index n, ExtensionMode mode) {
    switch (mode) {
        case ExtensionMode::Symmetric: {
            Index p = 2 * n;
            Index m = ((i % p) + p) % p;
            return m < n ? m : p - 1 - m;
        }
        case ExtensionMode::Reflect: {
            if (n == 1) return 0;
            Index p = 2 * n - 2;
            Index m = ((i % p) + p) % p;
            return m < n ? m : p - m;
        }
        case ExtensionMode::Periodic:
            return ((i % n) + n) % n;
        default:
            throw Error("map_index: mode is not an index map");
    }
}

// Antireflect cannot be written as an index map; fold outward one mirror at a
// time, each fold anti-symmetric about the current edge sample.
void antireflect_fill(Eigen::VectorXd& ext, Index pad, Index n) {
    if (n < 2 && pad > 0)
        throw DegenerateSignal("antireflect extension needs at least 2 samples");
    Index lo = pad, hi = pad + n - 1;  // current filled range
    while (lo > 0) {
        Index take = std::min(lo, hi - lo);
        for (Index k = 1; k <= take; ++k) ext[lo - k] = 2.0 * ext[lo] - ext[lo + k];
        lo -= take;
    }
    Index end = pad + n - 1 + pad;
    while (hi < end) {
        Index take = std::min(end - hi, hi - lo);
        for (Index k = 1; k <= take; ++k) ext[hi + k] = 2.0 * ext[hi] - ext[hi - k];
        hi += take;
    }
}

}  // namespace

Eigen::VectorXd extend(const Eigen::VectorXd& signal, Index pad, ExtensionMode mode) {
    const Index n = signal.size();
    if (n == 0) throw DegenerateSignal("cannot extend an empty signal");
    if (pad < 0) throw Error("negative pad");
    Eigen::VectorXd ext(n + 2 * pad);
    ext.segment(pad, n) = signal;
    if (pad == 0) return ext;

    switch (mode) {
        case ExtensionMode::Zero:
            ext.head(pad).setZero();
            ext.tail(pad).setZero();
            return ext;
        case ExtensionMode::Antireflect:
            antireflect_fill(ext, pad, n);
            return ext;
        case ExtensionMode::Reflect:
            if (n < 2) throw DegenerateSignal("reflect extension needs at least 2 samples");
            [[fallthrough]];
        default:
            for (Index i = 0; i < pad; ++i) {
                ext[i] = signal[map_index(i - pad, n, mode)];
                ext[pad + n + i] = signal[map_index(n + i, n, mode)];
            }
            return ext;
    }
}

namespace {

Index coeff_len(Index n, Index filter_len, ExtensionMode mode) {
    if (mode == ExtensionMode::Periodic) return (n + 1) / 2;
    return (n + filter_len - 1) / 2;
}

// Periodized analysis: circular convolution on the signal padded to even
// length by repeating the last sample.
std::pair<Eigen::VectorXd, Eigen::VectorXd>
dwt1d_periodized(const Eigen::VectorXd& signal, const FilterBank& bank) {
    Index n = signal.size();
    Eigen::VectorXd x;
    if (n % 2 != 0) {
        x.resize(n + 1);
        x.head(n) = signal;
        x[n] = signal[n - 1];
        n += 1;
    } else {
        x = signal;
    }
    const Index L = bank.filter_length();
    const Index nc = n / 2;
    Eigen::VectorXd approx(nc), detail(nc);
    for (Index k = 0; k < nc; ++k) {
        double a = 0.0, d = 0.0;
        for (Index j = 0; j < L; ++j) {
            Index idx = (((2 * k + 1 - j) % n) + n) % n;
            a += bank.dec_lo[j] * x[idx];
            d += bank.dec_hi[j] * x[idx];
        }
        approx[k] = a;
        detail[k] = d;
    }
    return {approx, detail};
}

}  // namespace

std::pair<Eigen::VectorXd, Eigen::VectorXd>
dwt1d(const Eigen::VectorXd& signal, const FilterBank& bank, ExtensionMode mode) {
    const Index n = signal.size();
    if (n == 0) throw DegenerateSignal("empty signal");
    if (mode == ExtensionMode::Periodic) return dwt1d_periodized(signal, bank);

    const Index L = bank.filter_length();
    const Eigen::VectorXd ext = extend(signal, L - 1, mode);
    const Index nc = coeff_len(n, L, mode);
    // Coefficient k is the dot product of the reversed filter with the
    // extended window ending at position 2k + L (left pad is L - 1).
    Eigen::VectorXd approx(nc), detail(nc);
    Eigen::VectorXd lo_rev = bank.dec_lo.reverse();
    Eigen::VectorXd hi_rev = bank.dec_hi.reverse();
    for (Index k = 0; k < nc; ++k) {
        auto window = ext.segment(2 * k + 1, L);
        approx[k] = lo_rev.dot(window);
        detail[k] = hi_rev.dot(window);
    }
    return {approx, detail};
}

std::pair<Eigen::VectorXd, Eigen::VectorXd>
dwt1d_reference(const Eigen::VectorXd& signal, const FilterBank& bank, ExtensionMode mode) {
    const Index n = signal.size();
    if (n == 0) throw DegenerateSignal("empty signal");
    if (mode == ExtensionMode::Periodic) {
        // Circular analysis spelled out one output at a time.
        Eigen::VectorXd x = signal;
        if (x.size() % 2 != 0) {
            x.conservativeResize(x.size() + 1);
            x[x.size() - 1] = x[x.size() - 2];
        }
        const Index np = x.size();
        const Index nc = np / 2;
        const Index L = bank.filter_length();
        Eigen::VectorXd approx = Eigen::VectorXd::Zero(nc);
        Eigen::VectorXd detail = Eigen::VectorXd::Zero(nc);
        for (Index k = 0; k < nc; ++k)
            for (Index j = 0; j < L; ++j) {
                Index idx = (((2 * k + 1 - j) % np) + np) % np;
                approx[k] += bank.dec_lo[j] * x[idx];
                detail[k] += bank.dec_hi[j] * x[idx];
            }
        return {approx, detail};
    }

    const Index L = bank.filter_length();
    const Eigen::VectorXd ext = extend(signal, L - 1, mode);
    // Full convolution, then every second sample starting at index L.
    auto full_conv = [&](const Eigen::VectorXd& f) {
        Eigen::VectorXd out = Eigen::VectorXd::Zero(ext.size() + L - 1);
        for (Index m = 0; m < ext.size(); ++m)
            for (Index j = 0; j < L; ++j) out[m + j] += ext[m] * f[j];
        return out;
    };
    const Eigen::VectorXd clo = full_conv(bank.dec_lo);
    const Eigen::VectorXd chi = full_conv(bank.dec_hi);
    const Index nc = coeff_len(n, L, mode);
    Eigen::VectorXd approx(nc), detail(nc);
    for (Index k = 0; k < nc; ++k) {
        approx[k] = clo[2 * k + L];
        detail[k] = chi[2 * k + L];
    }
    return {approx, detail};
}

Eigen::VectorXd idwt1d(const Eigen::VectorXd& approx, const Eigen::VectorXd& detail,
                       const FilterBank& bank, ExtensionMode mode, Index orig_len) {
    if (approx.size() != detail.size())
        throw ShapeMismatch("approx/detail length mismatch");
    const Index nc = approx.size();
    const Index L = bank.filter_length();
    if (nc == 0 || orig_len <= 0) throw ShapeMismatch("empty coefficient bands");
    const Index expected =
        (mode == ExtensionMode::Periodic) ? (orig_len + 1) / 2 : (orig_len + L - 1) / 2;
    if (nc != expected)
        throw ShapeMismatch("coefficient length inconsistent with orig_len");

    // Upsampling convolution: coefficients at even positions, full convolution
    // with the synthesis filters, branches summed.
    Eigen::VectorXd full = Eigen::VectorXd::Zero(2 * nc + L - 2);
    for (Index k = 0; k < nc; ++k)
        for (Index j = 0; j < L; ++j) {
            full[2 * k + j] += approx[k] * bank.rec_lo[j];
            full[2 * k + j] += detail[k] * bank.rec_hi[j];
        }

    Eigen::VectorXd out(orig_len);
    if (mode == ExtensionMode::Periodic) {
        // Wrap the tail back into one period of length 2 * nc.
        const Index period = 2 * nc;
        Eigen::VectorXd per = Eigen::VectorXd::Zero(period);
        for (Index t = 0; t < full.size(); ++t) {
            Index p = t - (L - 2);
            per[((p % period) + period) % period] += full[t];
        }
        out = per.head(orig_len);
    } else {
        out = full.segment(L - 2, orig_len);
    }
    return out;
}

Subbands dwt2d(const Plane& plane, const FilterBank& bank, ExtensionMode mode) {
    if (plane.size() == 0) throw DegenerateSignal("empty plane");
    const Index h = plane.rows(), w = plane.cols();
    const Index nw = coeff_len(w, bank.filter_length(), mode);
    const Index nh = coeff_len(h, bank.filter_length(), mode);

    // Row pass: transform along width.
    Plane row_lo(h, nw), row_hi(h, nw);
    for (Index r = 0; r < h; ++r) {
        auto [a, d] = dwt1d(plane.row(r).transpose(), bank, mode);
        row_lo.row(r) = a.transpose();
        row_hi.row(r) = d.transpose();
    }

    Subbands sb;
    sb.orig_h = h;
    sb.orig_w = w;
    sb.ll.resize(nh, nw);
    sb.lh.resize(nh, nw);
    sb.hl.resize(nh, nw);
    sb.hh.resize(nh, nw);
    for (Index c = 0; c < nw; ++c) {
        auto [la, ld] = dwt1d(row_lo.col(c), bank, mode);
        sb.ll.col(c) = la;
        sb.lh.col(c) = ld;
        auto [ha, hd] = dwt1d(row_hi.col(c), bank, mode);
        sb.hl.col(c) = ha;
        sb.hh.col(c) = hd;
    }
    return sb;
}

Plane idwt2d(const Subbands& sb, const FilterBank& bank, ExtensionMode mode) {
    if (sb.ll.rows() != sb.lh.rows() || sb.ll.cols() != sb.lh.cols() ||
        sb.ll.rows() != sb.hl.rows() || sb.ll.cols() != sb.hl.cols() ||
        sb.ll.rows() != sb.hh.rows() || sb.ll.cols() != sb.hh.cols())
        throw ShapeMismatch("subband planes differ in shape");
    const Index nw = sb.ll.cols();

    // Invert the column pass back to row-transformed planes.
    Plane row_lo(sb.orig_h, nw), row_hi(sb.orig_h, nw);
    for (Index c = 0; c < nw; ++c) {
        row_lo.col(c) = idwt1d(sb.ll.col(c), sb.lh.col(c), bank, mode, sb.orig_h);
        row_hi.col(c) = idwt1d(sb.hl.col(c), sb.hh.col(c), bank, mode, sb.orig_h);
    }

    Plane out(sb.orig_h, sb.orig_w);
    for (Index r = 0; r < sb.orig_h; ++r) {
        Eigen::VectorXd x = idwt1d(row_lo.row(r).transpose(), row_hi.row(r).transpose(),
                                   bank, mode, sb.orig_w);
        out.row(r) = x.transpose();
    }
    return out;
}

}  // namespace fsbi
