//! TOML run configuration.
//!
//! Flat keys supply parameter defaults; `[[codes]]` entries describe the
//! storage systems for `mixture` and `overhead`:
//!
//! ```toml
//! trials = 500
//! step = 16
//!
//! [[codes]]
//! kind = "rs"
//! n = 160
//! k = 128
//! field_degree = 8
//!
//! [[codes]]
//! kind = "ldpc"
//! n = 1280
//! k = 1024
//! alist_path = "ar4ja.alist"
//! ```
//!
//! LDPC lengths count bits; `field_degree` then sets how many bits form one
//! transmitted symbol. Without `alist_path` an AR4JA code of the matching
//! rate is built.

use std::path::{Path, PathBuf};

use codedel::codes::{ldpc_from_alist, make_ar4ja, make_ldpc, make_rln, make_rs, Ar4jaRate};
use codedel::lifting::{lift_generator, LiftedCode};
use codedel::{CodeKind, CodeSpec, Field};
use serde::{Deserialize, Serialize};

use crate::args::Format;
use crate::error::{CliError, Result};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub n: Option<usize>,
    pub k: Option<usize>,
    #[serde(rename = "S")]
    pub sources: Option<usize>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub step: Option<usize>,
    pub mixture: Option<Vec<usize>>,
    pub extra: Option<usize>,
    pub format: Option<Format>,
    /// Tradeoff source counts, e.g. `"1,2,inf"`.
    pub tradeoff_sources: Option<String>,
    /// Tradeoff block lengths, e.g. `"inf,64"`.
    pub tradeoff_lengths: Option<String>,
    pub sigma_step: Option<f64>,
    pub sigma_max: Option<f64>,
    #[serde(default)]
    pub codes: Vec<CodeDesc>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut config: FileConfig = toml::from_str(&text).map_err(|source| CliError::ConfigParse {
            path: path.to_path_buf(),
            source,
        })?;
        let dir = path.parent().unwrap_or(Path::new("."));
        for code in &mut config.codes {
            if let Some(p) = &code.alist_path {
                if p.is_relative() {
                    code.alist_path = Some(dir.join(p));
                }
            }
        }
        Ok(config)
    }
}

fn default_degree() -> u32 {
    8
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeDesc {
    pub kind: CodeKind,
    pub n: usize,
    pub k: usize,
    #[serde(default = "default_degree")]
    pub field_degree: u32,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alist_path: Option<PathBuf>,
}

impl CodeDesc {
    fn new(kind: CodeKind, n: usize, k: usize, seed: u64) -> Self {
        CodeDesc {
            kind,
            n,
            k,
            field_degree: 8,
            seed,
            alist_path: None,
        }
    }

    /// RLN, RS and AR4JA rate-4/5 codes carrying 128 bytes in 160 symbols.
    pub fn defaults() -> Vec<CodeDesc> {
        vec![
            CodeDesc::new(CodeKind::Rln, 160, 128, 1),
            CodeDesc::new(CodeKind::Rs, 160, 128, 0),
            CodeDesc::new(CodeKind::Ldpc, 1280, 1024, 0),
        ]
    }

    pub fn build(&self) -> Result<LiftedCode> {
        let field = Field::with_degree(self.field_degree)?;
        match self.kind {
            CodeKind::Rs => Ok(lift_generator(&make_rs(self.n, self.k, &field)?)),
            CodeKind::Rln => Ok(lift_generator(&make_rln(self.n, self.k, &field, self.seed)?)),
            CodeKind::Ldpc => {
                let code = match &self.alist_path {
                    Some(path) => self.load_alist(path)?,
                    None => make_ar4ja(self.k, Ar4jaRate::from_lengths(self.n, self.k)?)?,
                };
                Ok(LiftedCode::binary_blocks(&code, self.field_degree as usize)?)
            }
        }
    }

    fn load_alist(&self, path: &Path) -> Result<CodeSpec> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let wrap = |source| CliError::Alist {
            path: path.to_path_buf(),
            source,
        };
        let code = make_ldpc(ldpc_from_alist(&text).map_err(wrap)?).map_err(wrap)?;
        if (code.n(), code.k()) != (self.n, self.k) {
            return Err(CliError::usage(format!(
                "{} defines a [{}, {}] code but the descriptor says [{}, {}]",
                path.display(),
                code.n(),
                code.k(),
                self.n,
                self.k
            )));
        }
        Ok(code)
    }
}

/// Flag, else config file, else default.
pub fn pick<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}
