pub mod compute;
pub mod figures;
pub mod sweep;
pub mod verify;
