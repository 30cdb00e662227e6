pub mod calibrate;
pub mod run;
pub mod two_qubit;
pub mod verify;
