//! GF(2^n) arithmetic and the power / discrete-logarithm tables used as benchmarks.

mod field;
mod tables;

pub use field::{degree, format_poly, gcd, is_irreducible, mul_mod, parse_poly, rem, Gf2PolyField, MAX_DEGREE};
pub use tables::{
    cyclic_classes, cyclic_classes_with, exponent_recovery, pow_permutation, reduced_log_table, table_log, table_pow,
    CyclicClass, Representative, TABLE_LIMIT,
};

use crate::error::Result;

/// Published gate counts for logarithm tables of one field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LogBenchmark {
    pub modulus: &'static str,
    pub alpha: &'static str,
    /// Circuit on `n` lines only.
    pub plain: usize,
    /// Circuit writing the result onto `n` extra lines.
    pub with_memory: usize,
    /// Class-representative table, smallest-exponent rule.
    pub reduced_k_min: usize,
    pub reduced_k_max: usize,
    pub reduced_k_dist: usize,
}

impl LogBenchmark {
    pub fn field(&self) -> Result<Gf2PolyField> {
        Gf2PolyField::new(parse_poly(self.modulus)?, Some(parse_poly(self.alpha)?))
    }

    pub fn degree(&self) -> usize {
        degree(parse_poly(self.modulus).expect("table entry parses")).expect("nonzero")
    }
}

/// Reference rows, degrees 2 to 11.
pub const LOG_BENCHMARKS: &[LogBenchmark] = &[
    LogBenchmark {
        modulus: "x^2+x+1",
        alpha: "x",
        plain: 3,
        with_memory: 3,
        reduced_k_min: 3,
        reduced_k_max: 3,
        reduced_k_dist: 3,
    },
    LogBenchmark {
        modulus: "x^3+x+1",
        alpha: "x",
        plain: 6,
        with_memory: 7,
        reduced_k_min: 5,
        reduced_k_max: 5,
        reduced_k_dist: 5,
    },
    LogBenchmark {
        modulus: "x^3+x^2+1",
        alpha: "x",
        plain: 8,
        with_memory: 7,
        reduced_k_min: 7,
        reduced_k_max: 7,
        reduced_k_dist: 7,
    },
    LogBenchmark {
        modulus: "x^4+x+1",
        alpha: "x",
        plain: 23,
        with_memory: 18,
        reduced_k_min: 8,
        reduced_k_max: 8,
        reduced_k_dist: 12,
    },
    LogBenchmark {
        modulus: "x^4+x^3+x^2+x+1",
        alpha: "x+1",
        plain: 18,
        with_memory: 15,
        reduced_k_min: 11,
        reduced_k_max: 11,
        reduced_k_dist: 16,
    },
    LogBenchmark {
        modulus: "x^4+x^3+1",
        alpha: "x",
        plain: 22,
        with_memory: 17,
        reduced_k_min: 11,
        reduced_k_max: 11,
        reduced_k_dist: 11,
    },
    LogBenchmark {
        modulus: "x^5+x^2+1",
        alpha: "x",
        plain: 53,
        with_memory: 41,
        reduced_k_min: 23,
        reduced_k_max: 23,
        reduced_k_dist: 33,
    },
    LogBenchmark {
        modulus: "x^5+x^4+x^3+x^2+1",
        alpha: "x",
        plain: 53,
        with_memory: 42,
        reduced_k_min: 29,
        reduced_k_max: 29,
        reduced_k_dist: 45,
    },
    LogBenchmark {
        modulus: "x^5+x^4+x^2+x+1",
        alpha: "x",
        plain: 55,
        with_memory: 37,
        reduced_k_min: 26,
        reduced_k_max: 26,
        reduced_k_dist: 29,
    },
    LogBenchmark {
        modulus: "x^5+x^3+x^2+x+1",
        alpha: "x",
        plain: 60,
        with_memory: 41,
        reduced_k_min: 22,
        reduced_k_max: 22,
        reduced_k_dist: 27,
    },
    LogBenchmark {
        modulus: "x^6+x+1",
        alpha: "x",
        plain: 178,
        with_memory: 85,
        reduced_k_min: 50,
        reduced_k_max: 51,
        reduced_k_dist: 60,
    },
    LogBenchmark {
        modulus: "x^6+x^4+x^2+x+1",
        alpha: "x+1",
        plain: 168,
        with_memory: 91,
        reduced_k_min: 48,
        reduced_k_max: 50,
        reduced_k_dist: 64,
    },
    LogBenchmark {
        modulus: "x^6+x^5+x^2+x+1",
        alpha: "x",
        plain: 156,
        with_memory: 85,
        reduced_k_min: 57,
        reduced_k_max: 56,
        reduced_k_dist: 80,
    },
    LogBenchmark {
        modulus: "x^6+x^3+1",
        alpha: "x+1",
        plain: 145,
        with_memory: 90,
        reduced_k_min: 54,
        reduced_k_max: 40,
        reduced_k_dist: 57,
    },
    LogBenchmark {
        modulus: "x^7+x+1",
        alpha: "x",
        plain: 415,
        with_memory: 184,
        reduced_k_min: 124,
        reduced_k_max: 119,
        reduced_k_dist: 138,
    },
    LogBenchmark {
        modulus: "x^7+x^3+1",
        alpha: "x",
        plain: 407,
        with_memory: 190,
        reduced_k_min: 119,
        reduced_k_max: 119,
        reduced_k_dist: 128,
    },
    LogBenchmark {
        modulus: "x^7+x^5+x^2+x+1",
        alpha: "x",
        plain: 400,
        with_memory: 191,
        reduced_k_min: 128,
        reduced_k_max: 117,
        reduced_k_dist: 146,
    },
    LogBenchmark {
        modulus: "x^7+x^6+x^4+x+1",
        alpha: "x",
        plain: 358,
        with_memory: 191,
        reduced_k_min: 123,
        reduced_k_max: 108,
        reduced_k_dist: 169,
    },
    LogBenchmark {
        modulus: "x^8+x^4+x^3+x^2+1",
        alpha: "x",
        plain: 951,
        with_memory: 422,
        reduced_k_min: 276,
        reduced_k_max: 265,
        reduced_k_dist: 341,
    },
    LogBenchmark {
        modulus: "x^8+x^6+x^5+x^2+1",
        alpha: "x",
        plain: 987,
        with_memory: 417,
        reduced_k_min: 273,
        reduced_k_max: 260,
        reduced_k_dist: 378,
    },
    LogBenchmark {
        modulus: "x^8+x^7+x^6+x+1",
        alpha: "x",
        plain: 1019,
        with_memory: 414,
        reduced_k_min: 279,
        reduced_k_max: 272,
        reduced_k_dist: 358,
    },
    LogBenchmark {
        modulus: "x^8+x^6+x^3+x^2+1",
        alpha: "x",
        plain: 943,
        with_memory: 401,
        reduced_k_min: 261,
        reduced_k_max: 257,
        reduced_k_dist: 357,
    },
    LogBenchmark {
        modulus: "x^9+x^4+1",
        alpha: "x",
        plain: 2698,
        with_memory: 858,
        reduced_k_min: 600,
        reduced_k_max: 598,
        reduced_k_dist: 795,
    },
    LogBenchmark {
        modulus: "x^9+x^8+x^4+x+1",
        alpha: "x",
        plain: 2691,
        with_memory: 873,
        reduced_k_min: 595,
        reduced_k_max: 609,
        reduced_k_dist: 814,
    },
    LogBenchmark {
        modulus: "x^9+x^8+1",
        alpha: "x^2+x+1",
        plain: 2780,
        with_memory: 892,
        reduced_k_min: 584,
        reduced_k_max: 596,
        reduced_k_dist: 780,
    },
    LogBenchmark {
        modulus: "x^9+x^7+x^6+x^4+1",
        alpha: "x",
        plain: 2679,
        with_memory: 849,
        reduced_k_min: 618,
        reduced_k_max: 605,
        reduced_k_dist: 775,
    },
    LogBenchmark {
        modulus: "x^10+x^3+1",
        alpha: "x",
        plain: 6312,
        with_memory: 1840,
        reduced_k_min: 1334,
        reduced_k_max: 1311,
        reduced_k_dist: 1549,
    },
    LogBenchmark {
        modulus: "x^10+x^9+x^5+x+1",
        alpha: "x+1",
        plain: 6419,
        with_memory: 1873,
        reduced_k_min: 1339,
        reduced_k_max: 1331,
        reduced_k_dist: 1763,
    },
    LogBenchmark {
        modulus: "x^10+x^6+x^2+x+1",
        alpha: "x+1",
        plain: 6437,
        with_memory: 1858,
        reduced_k_min: 1312,
        reduced_k_max: 1288,
        reduced_k_dist: 1587,
    },
    LogBenchmark {
        modulus: "x^10+x^8+x^7+x^6+1",
        alpha: "x^2+x+1",
        plain: 6289,
        with_memory: 1847,
        reduced_k_min: 1332,
        reduced_k_max: 1305,
        reduced_k_dist: 1650,
    },
    LogBenchmark {
        modulus: "x^11+x^2+1",
        alpha: "x",
        plain: 14659,
        with_memory: 3947,
        reduced_k_min: 2850,
        reduced_k_max: 2891,
        reduced_k_dist: 3703,
    },
    LogBenchmark {
        modulus: "x^11+x^5+x^3+x+1",
        alpha: "x",
        plain: 14429,
        with_memory: 3952,
        reduced_k_min: 2856,
        reduced_k_max: 2841,
        reduced_k_dist: 3444,
    },
    LogBenchmark {
        modulus: "x^11+x^7+x^6+x^5+1",
        alpha: "x",
        plain: 14636,
        with_memory: 3941,
        reduced_k_min: 2882,
        reduced_k_max: 2881,
        reduced_k_dist: 3591,
    },
    LogBenchmark {
        modulus: "x^11+x^7+x^5+x^3+1",
        alpha: "x",
        plain: 14559,
        with_memory: 3921,
        reduced_k_min: 2823,
        reduced_k_max: 2864,
        reduced_k_dist: 3396,
    },
];
