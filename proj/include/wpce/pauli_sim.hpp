#ifndef WPCE_PAULI_SIM_HPP
#define WPCE_PAULI_SIM_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wpce::sim {

enum class Pauli : char { I = 'I', X = 'X', Y = 'Y', Z = 'Z' };

/// Tensor product of single-qubit Pauli letters. Letter q acts on qubit q,
/// and qubit q is bit q of a basis-state index (little-endian).
class PauliString {
public:
    PauliString() = default;
    explicit PauliString(std::vector<Pauli> letters);

    /// Parses a word over {I, X, Y, Z}; throws ParameterError otherwise.
    static PauliString parse(std::string_view word);

    std::size_t size() const { return letters_.size(); }
    Pauli operator[](std::size_t q) const { return letters_[q]; }
    std::span<const Pauli> letters() const { return letters_; }

    /// Number of non-identity letters.
    int weight() const;

    /// Qubits whose letter flips the basis bit (X or Y).
    std::uint64_t flip_mask() const { return flip_mask_; }
    /// Qubits whose letter contributes a (-1)^bit phase (Z or Y).
    std::uint64_t phase_mask() const { return phase_mask_; }
    int y_count() const { return y_count_; }

    std::string str() const;

    friend bool operator==(const PauliString& a, const PauliString& b) {
        return a.letters_ == b.letters_;
    }

private:
    std::vector<Pauli> letters_;
    std::uint64_t flip_mask_ = 0;
    std::uint64_t phase_mask_ = 0;
    int y_count_ = 0;
};

using Amplitude = std::complex<double>;

/// Normalized pure state on n qubits.
class Statevector {
public:
    /// |0...0> on `qubits` qubits.
    static Statevector zero(int qubits);

    /// Takes ownership of 2^n amplitudes; throws DimensionError if the size is
    /// not a power of two and ParameterError if the norm deviates from 1 by
    /// more than `tolerance`.
    static Statevector from_amplitudes(std::vector<Amplitude> amplitudes,
                                       double tolerance = 1e-10);

    int qubits() const { return qubits_; }
    std::size_t dimension() const { return amplitudes_.size(); }
    std::span<const Amplitude> amplitudes() const { return amplitudes_; }
    double norm_squared() const;

    void apply_ry(int qubit, double theta);
    void apply_cx(int control, int target);

private:
    Statevector(int qubits, std::vector<Amplitude> amplitudes)
        : qubits_(qubits), amplitudes_(std::move(amplitudes)) {}

    int qubits_ = 0;
    std::vector<Amplitude> amplitudes_;
};

enum class RotationAxis { Y };
enum class Entanglement { Linear };

/// TwoLocal layout: `layers` blocks of (RY on every qubit, CX chain
/// 0->1->...->n-1) followed by one closing RY layer.
struct AnsatzConfig {
    int qubits = 1;
    int layers = 1;
    RotationAxis rotation_axis = RotationAxis::Y;
    Entanglement entanglement = Entanglement::Linear;

    std::size_t parameter_count() const {
        return static_cast<std::size_t>(qubits) * static_cast<std::size_t>(layers + 1);
    }
    void validate() const;
};

/// Runs the ansatz on |0...0>. Parameter r*n + q is the angle of the RY on
/// qubit q in rotation layer r.
Statevector prepare_state(const AnsatzConfig& config, std::span<const double> params);

/// <psi|P|psi>, evaluated from the bit-flip/phase action of P on each basis state.
double expectation(const Statevector& state, const PauliString& pauli);

std::vector<double> expectation_batch(const Statevector& state,
                                      std::span<const PauliString> paulis);

} // namespace wpce::sim

#endif // WPCE_PAULI_SIM_HPP
