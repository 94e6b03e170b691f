use thiserror::Error;

/// Errors raised anywhere in the simulation and receiver chain.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter or combination of parameters is outside the model's valid range.
    #[error("configuration error: {0}")]
    Config(String),

    /// Clock recovery could not find a usable symbol-rate tone.
    #[error("timing failure: clock tone confidence {confidence_db:.2} dB below 6 dB")]
    Timing { confidence_db: f64 },

    /// The LMS adaptation blew up.
    #[error("equalizer diverged at window {window} (mse {mse:.4e}); try a smaller step")]
    Divergence { window: usize, mse: f64 },

    /// The decided bits do not correlate with the reference pattern.
    #[error("pattern sync failure: best normalized correlation {correlation:.3} < 0.2")]
    SyncFailure { correlation: f64 },

    /// A metric is not defined for the given input.
    #[error("undefined metric: {0}")]
    UndefinedMetric(String),

    /// Waveform container could not be decoded.
    #[error("format error at byte {offset}: {message}")]
    Format { offset: u64, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// An error tagged with the pipeline stage that raised it.
    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// True for errors caused by the user's input rather than by the signal.
    pub fn is_config(&self) -> bool {
        match self {
            Error::Config(_) | Error::Format { .. } => true,
            Error::Stage { source, .. } => source.is_config(),
            _ => false,
        }
    }

    /// The innermost error, with stage tags removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            e => e,
        }
    }

    /// Tag with the pipeline stage that raised the error.
    pub fn at(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
