/// Pre-FEC BER limit of the 7 % overhead hard-decision code.
pub const HD_FEC_THRESHOLD: f64 = 5e-3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FecVerdict {
    pub ber: f64,
    pub threshold: f64,
    /// Strictly below threshold.
    pub pass: bool,
    /// `10 log10(threshold / ber)`; infinite at zero BER.
    pub margin_db: f64,
}

impl FecVerdict {
    pub fn label(&self) -> &'static str {
        if self.pass {
            "pass"
        } else {
            "fail"
        }
    }
}

pub fn fec_verdict(ber: f64) -> FecVerdict {
    FecVerdict {
        ber,
        threshold: HD_FEC_THRESHOLD,
        pass: ber < HD_FEC_THRESHOLD,
        margin_db: 10.0 * (HD_FEC_THRESHOLD / ber).log10(),
    }
}
