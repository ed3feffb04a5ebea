/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_dexplorer_free: (a: number, b: number) => void;
export const dexplorer_flip: (a: number, b: number) => [number, number, number, number];
export const dexplorer_flip_nearest: (a: number, b: number, c: number) => [number, number, number, number];
export const dexplorer_new: (a: number) => [number, number, number];
export const dexplorer_reset: (a: number, b: number) => void;
export const dexplorer_state_json: (a: number) => [number, number, number, number];
export const dexplorer_undo: (a: number) => number;
export const star_path_json: (a: number, b: number) => [number, number, number, number];
export const summary_json: (a: number, b: number, c: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
