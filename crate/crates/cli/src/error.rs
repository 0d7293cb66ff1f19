use humbert_core::embeddings::EmbeddingError;
use humbert_core::exactarith::FieldError;
use humbert_core::hilbert::HilbertError;
use humbert_core::humbert::HumbertError;
use humbert_core::igusa::IgusaError;
use humbert_core::json::JsonError;
use humbert_core::siegel::SiegelError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    /// 1 domain error, 2 malformed or invalid input, 3 search budget exhausted.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Domain(_) => "domain",
            CliError::Parse(_) => "parse",
            CliError::Budget(_) => "budget",
        }
    }
}

impl From<JsonError> for CliError {
    fn from(e: JsonError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<HumbertError> for CliError {
    fn from(e: HumbertError) -> Self {
        match e {
            HumbertError::SearchBudgetExceeded(_) => CliError::Budget(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

macro_rules! domain_errors {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain(e.to_string())
            }
        })*
    };
}

domain_errors!(EmbeddingError, FieldError, HilbertError, IgusaError, SiegelError);
