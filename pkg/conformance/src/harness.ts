/**
 * Drives the generator CLI and a Java compiler over the fixture suite.
 *
 * The generator is only reached through its command-line interface; each
 * fixture is generated and compiled in a disposable temporary directory.
 */

import { spawnSync } from "node:child_process";
import { mkdtempSync, mkdirSync, readFileSync, readdirSync } from "node:fs";
import { tmpdir } from "node:os";
import { basename, join } from "node:path";

export interface CommandResult {
  status: number;
  stdout: string;
  stderr: string;
}

function run(cmd: string, args: string[]): CommandResult {
  const proc = spawnSync(cmd, args, { encoding: "utf8" });
  if (proc.error) {
    throw proc.error;
  }
  return {
    status: proc.status ?? -1,
    stdout: proc.stdout ?? "",
    stderr: proc.stderr ?? "",
  };
}

export function javacAvailable(): boolean {
  try {
    return run("javac", ["-version"]).status === 0;
  } catch {
    return false;
  }
}

/** Run the generator CLI; throws when generation fails. */
export function generateApi(specFile: string, outDir: string): void {
  mkdirSync(outDir, { recursive: true });
  const override = process.env.PROTOGEN_CMD;
  const attempts: Array<[string, string[]]> = override
    ? [[override, [specFile, "-o", outDir]]]
    : [
        ["protogen", [specFile, "-o", outDir]],
        ["python3", ["-m", "protogen.cli", specFile, "-o", outDir]],
      ];
  let lastError = "";
  for (const [cmd, args] of attempts) {
    try {
      const result = run(cmd, args);
      if (result.status === 0) {
        return;
      }
      lastError = result.stderr;
    } catch {
      continue; // command not found, try the next spelling
    }
  }
  throw new Error(`generator failed for ${specFile}: ${lastError}`);
}

export function javaFilesIn(dir: string): string[] {
  return readdirSync(dir)
    .filter((name) => name.endsWith(".java"))
    .map((name) => join(dir, name));
}

/** Compile the given source files into destDir. */
export function compileJava(files: string[], destDir: string): CommandResult {
  mkdirSync(destDir, { recursive: true });
  return run("javac", ["-d", destDir, ...files]);
}

export function runJavaClass(classDir: string, mainClass: string): CommandResult {
  return run("java", ["-cp", classDir, mainClass]);
}

/** 1-based line numbers carrying an `// expect-error` marker. */
export function expectedErrorLines(file: string): number[] {
  const lines = readFileSync(file, "utf8").split("\n");
  const found: number[] = [];
  lines.forEach((line, index) => {
    if (line.includes("// expect-error")) {
      found.push(index + 1);
    }
  });
  return found;
}

/**
 * True when javac reported an error on one of the expected lines of the
 * given file. Matches only file and line, not the message text, for
 * stability across compiler versions.
 */
export function failedAtExpectedLine(
  stderr: string,
  file: string,
  lines: number[],
): boolean {
  const name = basename(file);
  return lines.some((line) => stderr.includes(`${name}:${line}: error`));
}

export function freshWorkDir(label: string): string {
  return mkdtempSync(join(tmpdir(), `conformance-${label}-`));
}
