//! Kirillov-Reshetikhin crystals, the Dynkin flip `σ` and affine operators.

mod cache;
mod crystal;
mod pack;
mod promotion;
mod sigma;
mod spec;
mod tensor;
mod verify;

pub use cache::{
    clear as clear_cache, default_cache_dir, list as list_cache, CacheEntry, Session, CACHE_ENV,
    FORMAT_VERSION,
};
pub use crystal::{KrCrystal, ZeroMap, FACTOR_LIMIT};
pub use pack::{decode, encode, MAX_WORD};
pub use promotion::promotion;
pub use spec::{kr_components, AlgebraSpec, Family, KrSpec, MAX_LETTER};
pub use tensor::{columns_of, Tensor, TensorElement, ENUMERATION_LIMIT};
pub use verify::{verify_structure, Check, StructureReport};
