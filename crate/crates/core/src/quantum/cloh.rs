//! Fitted ClOH vibrational Hamiltonian: three oscillators, 2:1 Fermi
//! resonance between modes 1 and 2, expanded to order 10, plus the 3:1
//! coupling between modes 2 and 3.

use super::model::{HamiltonianModel, TermKind};
use crate::resonance::ResonanceSpec;

/// `(N1, N2, N3)` exponents and value in cm⁻¹. Unlisted slots are zero.
const DUNHAM: [([u32; 3], f64); 22] = [
    ([1, 0, 0], 753.834),
    ([0, 1, 0], 1258.914),
    ([0, 0, 1], 3777.067),
    ([2, 0, 0], -7.123),
    ([0, 2, 0], 3.204),
    ([0, 0, 2], -80.277),
    ([1, 1, 0], -10.637),
    ([0, 1, 1], -19.985),
    ([3, 0, 0], 0.0825),
    ([0, 0, 3], -0.3619),
    ([1, 2, 0], -0.2503),
    ([1, 0, 2], -0.0532),
    ([0, 1, 2], -1.9534),
    ([2, 1, 0], -0.0802),
    ([4, 0, 0], -0.00171),
    ([0, 4, 0], -0.04117),
    ([0, 2, 2], -0.15070),
    ([1, 3, 0], -0.01229),
    ([0, 1, 3], 0.13189),
    ([1, 1, 2], 0.02381),
    ([0, 5, 0], 0.00151),
    ([0, 2, 3], -0.00066),
];

/// Power of `(a1⁺² a2 + a2⁺ a1²)`, number exponents and value.
const COUPLING: [(u32, [u32; 3], f64); 5] = [
    (1, [1, 0, 0], -0.24939),
    (1, [0, 0, 1], -0.76017),
    (1, [2, 0, 0], 0.00583),
    (1, [0, 0, 2], -0.01158),
    (1, [1, 1, 0], 0.04075),
];

/// `a3⁺ a2³ + a2⁺³ a3`.
pub fn three_to_one_term() -> TermKind {
    TermKind::ExtraCoupling {
        raise: vec![0, 0, 1],
        lower: vec![0, 3, 0],
    }
}

pub const THREE_TO_ONE_VALUE: f64 = 0.19520;

pub fn cloh_model() -> HamiltonianModel {
    let spec = ResonanceSpec::new(3, 2, 1).expect("2:1 is a valid resonance");
    let mut model = HamiltonianModel::full_expansion(spec, 10);
    for (exps, v) in DUNHAM {
        model
            .set(
                TermKind::Dunham {
                    exps: exps.to_vec(),
                },
                v,
            )
            .expect("slot of the order-10 expansion");
    }
    for (power, num, v) in COUPLING {
        model
            .set(
                TermKind::ResonanceCoupling {
                    power,
                    num_exps: num.to_vec(),
                },
                v,
            )
            .expect("slot of the order-10 expansion");
    }
    model
        .insert(three_to_one_term(), THREE_TO_ONE_VALUE)
        .expect("new slot");
    model
}
