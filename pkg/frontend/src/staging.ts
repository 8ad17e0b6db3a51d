/** Staged edits: corrections typed into the chips live locally (and survive
 * a reload) until the annotator submits them as bits of wisdom. */

export interface StagedEdit {
  part: string;
  doc: number;
  lang: string;
  layer: string;
  position: number;
  value: unknown;
}

export interface StorageLike {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
  removeItem(key: string): void;
}

export class MemoryStorage implements StorageLike {
  private map = new Map<string, string>();
  getItem(key: string): string | null {
    return this.map.has(key) ? this.map.get(key)! : null;
  }
  setItem(key: string, value: string): void {
    this.map.set(key, value);
  }
  removeItem(key: string): void {
    this.map.delete(key);
  }
}

const sameSlot = (a: StagedEdit, b: StagedEdit): boolean =>
  a.part === b.part && a.doc === b.doc && a.lang === b.lang &&
  a.layer === b.layer && a.position === b.position;

export class Staging {
  constructor(private storage: StorageLike,
              private key = "meaningbank.staged") {}

  list(): StagedEdit[] {
    const raw = this.storage.getItem(this.key);
    if (!raw) return [];
    try {
      const parsed = JSON.parse(raw);
      return Array.isArray(parsed) ? parsed : [];
    } catch {
      return [];
    }
  }

  forLayer(part: string, doc: number, lang: string,
           layer?: string): StagedEdit[] {
    return this.list().filter((e) =>
      e.part === part && e.doc === doc && e.lang === lang &&
      (layer === undefined || e.layer === layer));
  }

  stage(edit: StagedEdit): void {
    const rest = this.list().filter((e) => !sameSlot(e, edit));
    rest.push(edit);
    this.storage.setItem(this.key, JSON.stringify(rest));
  }

  unstage(edit: StagedEdit): void {
    const rest = this.list().filter((e) => !sameSlot(e, edit));
    if (rest.length === 0) {
      this.storage.removeItem(this.key);
    } else {
      this.storage.setItem(this.key, JSON.stringify(rest));
    }
  }

  clear(): void {
    this.storage.removeItem(this.key);
  }
}
