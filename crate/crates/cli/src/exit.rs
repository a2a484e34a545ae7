use selfdual::Error;

pub const OK: i32 = 0;
pub const FAILURE: i32 = 1;
pub const EMPTY_SPACE: i32 = 2;
pub const RESOURCE_CAP: i32 = 3;
pub const MISSING_ARTIFACT: i32 = 4;
pub const DYNAMICS_ABORT: i32 = 5;
pub const USAGE: i32 = 64;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn new(code: i32, message: impl Into<String>) -> CliError {
        CliError { code, message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> CliError {
        CliError::new(USAGE, message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = match e {
            Error::ResourceCap { .. } => RESOURCE_CAP,
            Error::Collision { .. } | Error::StepUnderflow { .. } => DYNAMICS_ABORT,
            Error::InvalidArgument(_) | Error::Parse(_) | Error::Dimension(_) => USAGE,
            _ => FAILURE,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::new(FAILURE, e.to_string())
    }
}
