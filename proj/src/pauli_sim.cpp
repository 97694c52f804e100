#include "wpce/pauli_sim.hpp"

#include <bit>
#include <cmath>

#include "wpce/errors.hpp"

namespace wpce::sim {

namespace {

constexpr int kMaxQubits = 24;

void require_qubit(int q, int n, const char* what) {
    if (q < 0 || q >= n) {
        throw DimensionError(std::string(what) + ": qubit " + std::to_string(q) +
                             " out of range for " + std::to_string(n) + " qubits");
    }
}

} // namespace

PauliString::PauliString(std::vector<Pauli> letters) : letters_(std::move(letters)) {
    if (letters_.size() > static_cast<std::size_t>(kMaxQubits)) {
        throw DimensionError("PauliString: too many qubits");
    }
    for (std::size_t q = 0; q < letters_.size(); ++q) {
        const std::uint64_t bit = std::uint64_t{1} << q;
        switch (letters_[q]) {
        case Pauli::I:
            break;
        case Pauli::X:
            flip_mask_ |= bit;
            break;
        case Pauli::Y:
            flip_mask_ |= bit;
            phase_mask_ |= bit;
            ++y_count_;
            break;
        case Pauli::Z:
            phase_mask_ |= bit;
            break;
        }
    }
}

PauliString PauliString::parse(std::string_view word) {
    std::vector<Pauli> letters;
    letters.reserve(word.size());
    for (char c : word) {
        switch (c) {
        case 'I': letters.push_back(Pauli::I); break;
        case 'X': letters.push_back(Pauli::X); break;
        case 'Y': letters.push_back(Pauli::Y); break;
        case 'Z': letters.push_back(Pauli::Z); break;
        default:
            throw ParameterError("PauliString::parse: invalid letter '" + std::string(1, c) + "'");
        }
    }
    return PauliString(std::move(letters));
}

int PauliString::weight() const {
    return std::popcount(flip_mask_ | phase_mask_);
}

std::string PauliString::str() const {
    std::string out;
    out.reserve(letters_.size());
    for (Pauli p : letters_) out.push_back(static_cast<char>(p));
    return out;
}

Statevector Statevector::zero(int qubits) {
    if (qubits < 1 || qubits > kMaxQubits) {
        throw DimensionError("Statevector::zero: qubit count out of range");
    }
    std::vector<Amplitude> amps(std::size_t{1} << qubits);
    amps[0] = 1.0;
    return Statevector(qubits, std::move(amps));
}

Statevector Statevector::from_amplitudes(std::vector<Amplitude> amplitudes, double tolerance) {
    const std::size_t dim = amplitudes.size();
    if (dim < 2 || !std::has_single_bit(dim) || std::countr_zero(dim) > kMaxQubits) {
        throw DimensionError("Statevector: amplitude count must be 2^n with 1 <= n <= 24");
    }
    Statevector s(std::countr_zero(dim), std::move(amplitudes));
    if (std::abs(s.norm_squared() - 1.0) > tolerance) {
        throw ParameterError("Statevector: amplitudes are not normalized");
    }
    return s;
}

double Statevector::norm_squared() const {
    double acc = 0.0;
    for (const Amplitude& a : amplitudes_) acc += std::norm(a);
    return acc;
}

void Statevector::apply_ry(int qubit, double theta) {
    require_qubit(qubit, qubits_, "apply_ry");
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const std::size_t stride = std::size_t{1} << qubit;
    const std::size_t dim = amplitudes_.size();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            const Amplitude a0 = amplitudes_[i];
            const Amplitude a1 = amplitudes_[i + stride];
            amplitudes_[i] = c * a0 - s * a1;
            amplitudes_[i + stride] = s * a0 + c * a1;
        }
    }
}

void Statevector::apply_cx(int control, int target) {
    require_qubit(control, qubits_, "apply_cx");
    require_qubit(target, qubits_, "apply_cx");
    if (control == target) throw DimensionError("apply_cx: control equals target");
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        if ((i & cbit) && !(i & tbit)) std::swap(amplitudes_[i], amplitudes_[i | tbit]);
    }
}

void AnsatzConfig::validate() const {
    if (qubits < 1 || qubits > kMaxQubits) throw ParameterError("AnsatzConfig: qubits out of range");
    if (layers < 1) throw ParameterError("AnsatzConfig: layers must be >= 1");
}

Statevector prepare_state(const AnsatzConfig& config, std::span<const double> params) {
    config.validate();
    if (params.size() != config.parameter_count()) {
        throw DimensionError("prepare_state: expected " + std::to_string(config.parameter_count()) +
                             " parameters, got " + std::to_string(params.size()));
    }
    const int n = config.qubits;
    Statevector state = Statevector::zero(n);
    std::size_t k = 0;
    for (int layer = 0; layer <= config.layers; ++layer) {
        for (int q = 0; q < n; ++q) state.apply_ry(q, params[k++]);
        if (layer == config.layers) break;
        for (int q = 0; q + 1 < n; ++q) state.apply_cx(q, q + 1);
    }
    return state;
}

double expectation(const Statevector& state, const PauliString& pauli) {
    if (pauli.size() != static_cast<std::size_t>(state.qubits())) {
        throw DimensionError("expectation: Pauli string has " + std::to_string(pauli.size()) +
                             " letters for a " + std::to_string(state.qubits()) + "-qubit state");
    }
    const auto amps = state.amplitudes();
    const std::uint64_t flip = pauli.flip_mask();
    const std::uint64_t phase = pauli.phase_mask();

    // P|b> = i^{#Y} (-1)^{popcount(b & phase)} |b ^ flip>.
    Amplitude acc = 0.0;
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        const double sign = (std::popcount(b & phase) & 1) ? -1.0 : 1.0;
        acc += std::conj(amps[b ^ flip]) * (sign * amps[b]);
    }
    switch (pauli.y_count() & 3) {
    case 0: return acc.real();
    case 1: return -acc.imag();  // i * acc
    case 2: return -acc.real();
    default: return acc.imag();  // -i * acc
    }
}

std::vector<double> expectation_batch(const Statevector& state,
                                      std::span<const PauliString> paulis) {
    std::vector<double> out;
    out.reserve(paulis.size());
    for (const PauliString& p : paulis) out.push_back(expectation(state, p));
    return out;
}

} // namespace wpce::sim
