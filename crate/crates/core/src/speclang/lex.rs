//! Tokenizer for `.smx` sources. `#` comments run to end of line;
//! whitespace is insignificant outside tokens.

use alloc::string::String;
use alloc::vec::Vec;

use super::SourceSpan;

#[derive(Clone, Debug, PartialEq)]
pub(super) enum Tok {
    Ident(String),
    Number(String),
    Str(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Colon,
    Semi,
    Comma,
    Arrow,
    RecurrentArrow,
    Eof,
}

impl Tok {
    pub(super) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => alloc::format!("identifier {s:?}"),
            Tok::Number(s) => alloc::format!("number {s}"),
            Tok::Str(_) => "string literal".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::RecurrentArrow => "`~>`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(super) struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

pub(super) struct LexError {
    pub span: SourceSpan,
    pub message: String,
}

pub(super) fn lex(file: &str, input: &str) -> Result<Vec<Token>, LexError> {
    let mut tokens = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    let mut line: u32 = 1;
    let mut col: u32 = 1;

    macro_rules! span_here {
        ($sl:expr, $sc:expr) => {
            SourceSpan {
                file: file.into(),
                start_line: $sl,
                start_col: $sc,
                end_line: line,
                end_col: col.saturating_sub(1).max(1),
            }
        };
    }

    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b'\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            b' ' | b'\t' | b'\r' => {
                i += 1;
                col += 1;
            }
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                    col += 1;
                }
            }
            b'{' | b'}' | b'[' | b']' | b':' | b';' | b',' => {
                let (sl, sc) = (line, col);
                i += 1;
                col += 1;
                let tok = match c {
                    b'{' => Tok::LBrace,
                    b'}' => Tok::RBrace,
                    b'[' => Tok::LBracket,
                    b']' => Tok::RBracket,
                    b':' => Tok::Colon,
                    b';' => Tok::Semi,
                    _ => Tok::Comma,
                };
                tokens.push(Token { tok, span: span_here!(sl, sc) });
            }
            b'-' | b'~' => {
                let (sl, sc) = (line, col);
                if i + 1 < bytes.len() && bytes[i + 1] == b'>' {
                    i += 2;
                    col += 2;
                    let tok = if c == b'-' { Tok::Arrow } else { Tok::RecurrentArrow };
                    tokens.push(Token { tok, span: span_here!(sl, sc) });
                } else {
                    return Err(LexError {
                        span: SourceSpan {
                            file: file.into(),
                            start_line: sl,
                            start_col: sc,
                            end_line: sl,
                            end_col: sc,
                        },
                        message: alloc::format!("stray `{}`; expected `{}>`", c as char, c as char),
                    });
                }
            }
            b'"' => {
                let (sl, sc) = (line, col);
                i += 1;
                col += 1;
                let mut value = String::new();
                let mut closed = false;
                while i < bytes.len() {
                    let b = bytes[i];
                    if b == b'"' {
                        i += 1;
                        col += 1;
                        closed = true;
                        break;
                    }
                    if b == b'\n' {
                        break;
                    }
                    if b == b'\\' && i + 1 < bytes.len() {
                        let esc = bytes[i + 1];
                        let resolved = match esc {
                            b'"' => '"',
                            b'\\' => '\\',
                            b'n' => '\n',
                            b't' => '\t',
                            other => {
                                return Err(LexError {
                                    span: span_here!(sl, sc),
                                    message: alloc::format!(
                                        "unknown escape `\\{}` in string",
                                        other as char
                                    ),
                                })
                            }
                        };
                        value.push(resolved);
                        i += 2;
                        col += 2;
                    } else {
                        // multi-byte UTF-8 sequences pass through unchanged
                        let ch_len = utf8_len(b);
                        value.push_str(core::str::from_utf8(&bytes[i..i + ch_len]).unwrap_or("?"));
                        i += ch_len;
                        col += 1;
                    }
                }
                if !closed {
                    return Err(LexError {
                        span: span_here!(sl, sc),
                        message: "unterminated string literal".into(),
                    });
                }
                tokens.push(Token { tok: Tok::Str(value), span: span_here!(sl, sc) });
            }
            b'0'..=b'9' => {
                let (sl, sc) = (line, col);
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                    col += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    col += 1;
                    if i >= bytes.len() || !bytes[i].is_ascii_digit() {
                        return Err(LexError {
                            span: span_here!(sl, sc),
                            message: "digits required after decimal point".into(),
                        });
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                        col += 1;
                    }
                }
                let text = core::str::from_utf8(&bytes[start..i]).unwrap_or_default();
                tokens.push(Token {
                    tok: Tok::Number(text.into()),
                    span: span_here!(sl, sc),
                });
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                let (sl, sc) = (line, col);
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                    col += 1;
                }
                let text = core::str::from_utf8(&bytes[start..i]).unwrap_or_default();
                tokens.push(Token {
                    tok: Tok::Ident(text.into()),
                    span: span_here!(sl, sc),
                });
            }
            other => {
                return Err(LexError {
                    span: SourceSpan {
                        file: file.into(),
                        start_line: line,
                        start_col: col,
                        end_line: line,
                        end_col: col,
                    },
                    message: alloc::format!("unexpected character `{}`", other as char),
                });
            }
        }
    }
    tokens.push(Token {
        tok: Tok::Eof,
        span: SourceSpan {
            file: file.into(),
            start_line: line,
            start_col: col,
            end_line: line,
            end_col: col,
        },
    });
    Ok(tokens)
}

fn utf8_len(first: u8) -> usize {
    if first < 0x80 {
        1
    } else if first < 0xE0 {
        2
    } else if first < 0xF0 {
        3
    } else {
        4
    }
}
