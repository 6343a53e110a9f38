//! The book chapters, mirrored so their code blocks run as doc-tests.
